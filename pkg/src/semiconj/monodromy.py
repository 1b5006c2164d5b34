"""Monodromy by numerical path lifting, and fiber-product components.

Fibers are tracked with a tangent predictor and a Newton corrector; a step is
accepted only when every corrected point moved less than a third of half
its distance to any other corrected point, so no path can jump onto a
neighbour.  Every constellation is checked for product one, transitivity
and agreement of cycle types with the exact ramification portrait before it
is returned.
"""
from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce

import numpy as np

from .errors import ContinuationFailure, IdentityMismatch, InvariantViolation
from .ramification import (
    DEFAULT_MAX_BITS,
    RamificationPortrait,
    local_degree,
    ramification_portrait,
)
from .ratfun import Polynomial, RationalFunction, SpherePoint, equals, point_to_json

log = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# permutations


@dataclass(frozen=True)
class Permutation:
    """Bijection of ``range(n)``; ``a * b`` means apply ``a`` first."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, cycles) -> "Permutation":
        img = list(range(n))
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[a] = b
        return cls(tuple(img))

    def __len__(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return Permutation(tuple(other.images[i] for i in self.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for i in range(len(self.images)):
            if i in seen:
                continue
            cyc, j = [], i
            while j not in seen:
                seen.add(j)
                cyc.append(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def order(self) -> int:
        return reduce(math.lcm, self.cycle_type(), 1)

    def restrict(self, subset) -> "Permutation":
        """Induced permutation on an invariant subset, relabelled in sorted order."""
        subset = sorted(subset)
        index = {c: k for k, c in enumerate(subset)}
        return Permutation(tuple(index[self.images[c]] for c in subset))

    def to_json(self) -> list[int]:
        return [i + 1 for i in self.images]

    @classmethod
    def from_json(cls, obj) -> "Permutation":
        return cls(tuple(int(i) - 1 for i in obj))


def product(perms, n: int | None = None) -> Permutation:
    perms = list(perms)
    out = Permutation.identity(n if n is not None else len(perms[0]))
    for p in perms:
        out = out * p
    return out


def orbits(perms, n: int) -> list[list[int]]:
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for p in perms:
        for i in range(n):
            a, b = find(i), find(p.images[i])
            if a != b:
                parent[a] = b
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values(), key=lambda g: g[0])


def is_transitive(perms, n: int) -> bool:
    return len(orbits(perms, n)) == 1


# ---------------------------------------------------------------------------
# continuation


@dataclass(frozen=True)
class ContinuationConfig:
    base_index: int = 0  # pick the k-th admissible base point (for re-basing checks)
    initial_step: float = 0.02
    max_step: float = 0.1
    min_step: float = 1e-10
    newton_iters: int = 12
    newton_tol: float = 1e-9
    separation_factor: float = 3.0
    max_bits: int = DEFAULT_MAX_BITS
    max_base_height: int = 12
    clearance: float = 1.2  # radial segments keep this many loop radii from other branch points
    min_radius_ratio: float = 0.5  # accept a base point once every radius keeps this share of its ideal


@dataclass(frozen=True)
class Constellation:
    """Monodromy of a map: one permutation per branch point, product one."""

    base: complex
    branch_points: tuple[SpherePoint, ...]
    perms: tuple[Permutation, ...]
    fiber: tuple[complex, ...] = field(default=(), compare=False)

    @property
    def degree(self) -> int:
        return len(self.perms[0]) if self.perms else 0

    def product(self) -> Permutation:
        return product(self.perms, self.degree)

    def to_json(self) -> dict:
        return {
            "base": {"re": self.base.real, "im": self.base.imag},
            "branch_points": [point_to_json(b) for b in self.branch_points],
            "perms": [p.to_json() for p in self.perms],
        }

    @classmethod
    def from_json(cls, obj) -> "Constellation":
        from .ratfun import point_from_json

        base = obj["base"]
        base = complex(base["re"], base["im"]) if isinstance(base, dict) else complex(base)
        return cls(
            base,
            tuple(point_from_json(b) for b in obj["branch_points"]),
            tuple(Permutation.from_json(p) for p in obj["perms"]),
        )


def _height(x: Fraction) -> int:
    return max(abs(x.numerator), x.denominator)


def _rationals_by_height(max_h: int) -> list[Fraction]:
    """All rationals of height at most ``max_h``, by height, then size, positive first."""
    xs = {Fraction(p, q) for q in range(1, max_h + 1) for p in range(-max_h, max_h + 1)}
    return sorted(xs, key=lambda x: (_height(x), abs(x), x < 0))


class _Chart:
    """Working target coordinate ``t -> 1/(t - w)`` used when infinity is a branch point."""

    def __init__(self, shift: Fraction | None):
        self.shift = shift

    def point(self, p: SpherePoint) -> complex:
        if self.shift is None:
            if p.is_infinity:
                raise ValueError("infinity in identity chart")
            return p.to_complex()
        if p.is_infinity:
            return 0j
        return 1 / (p.to_complex() - float(self.shift))

    def maps(self, f: RationalFunction) -> tuple[Polynomial, Polynomial]:
        if self.shift is None:
            return f.num, f.den
        return f.den, f.num - f.den.scale(self.shift)

    def unmap(self, t: complex) -> complex:
        if self.shift is None:
            return t
        return float(self.shift) + 1 / t


def _choose_chart(points: list[SpherePoint]) -> _Chart:
    if not any(p.is_infinity for p in points):
        return _Chart(None)
    for w in _rationals_by_height(20):
        wp = SpherePoint.exact(w)
        if all(not p.same_as(wp) and p.chordal_distance(wp) > 1e-3 for p in points):
            return _Chart(w)
    raise ContinuationFailure("no admissible chart shift")


class _PolyMap:
    def __init__(self, num: Polynomial, den: Polynomial, degree: int):
        self.degree = degree
        n = degree + 1
        self.p = np.array([complex(float(num[i])) for i in range(n)][::-1])
        self.q = np.array([complex(float(den[i])) for i in range(n)][::-1])
        self.dp = np.polyder(self.p) if degree else np.zeros(1, complex)
        self.dq = np.polyder(self.q) if degree else np.zeros(1, complex)
        lead_p, lead_q = self.p[0], self.q[0]
        self.at_infinity = None if lead_q == 0 else lead_p / lead_q  # value at source infinity

    def fiber(self, t: complex) -> np.ndarray:
        coeffs = self.p - t * self.q
        roots = np.roots(coeffs)
        if len(roots) != self.degree:
            raise ContinuationFailure("fiber over the base point is not finite")
        return self.polish(roots, t)

    def polish(self, z: np.ndarray, t: complex, iters: int = 8) -> np.ndarray:
        for _ in range(iters):
            g = np.polyval(self.p, z) - t * np.polyval(self.q, z)
            gs = np.polyval(self.dp, z) - t * np.polyval(self.dq, z)
            dz = g / gs
            z = z - dz
            if np.all(np.abs(dz) <= 1e-15 * (1 + np.abs(z))):
                break
        return z


def _path_pieces(z0: complex, b: complex, r: float):
    a = b + r * (z0 - b) / abs(z0 - b)
    return [
        lambda s: z0 + s * (a - z0),
        lambda s: b + (a - b) * cmath.exp(2j * math.pi * s),
        lambda s: a + s * (z0 - a),
    ]


def _track(pm: _PolyMap, pieces, start: np.ndarray, cfg: ContinuationConfig) -> np.ndarray:
    s = start.copy()
    for piece in pieces:
        tau, h = 0.0, cfg.initial_step
        t = piece(0.0)
        while tau < 1.0:
            h = min(h, 1.0 - tau)
            t1 = piece(tau + h)
            num_s = np.polyval(pm.p, s) - t * np.polyval(pm.q, s)
            gs = np.polyval(pm.dp, s) - t * np.polyval(pm.dq, s)
            dsdt = np.polyval(pm.q, s) / gs
            z = s + dsdt * (t1 - t) - num_s / gs
            for _ in range(cfg.newton_iters):
                g = np.polyval(pm.p, z) - t1 * np.polyval(pm.q, z)
                gz = np.polyval(pm.dp, z) - t1 * np.polyval(pm.dq, z)
                dz = g / gz
                z = z - dz
                if np.all(np.abs(dz) <= 1e-13 * (1 + np.abs(z))):
                    break
            # rounding in the polynomial values bounds the attainable accuracy,
            # so a stalled correction below the acceptance tolerance is fine
            converged = bool(np.all(np.abs(dz) <= cfg.newton_tol * (1 + np.abs(z))))
            ok = converged and np.all(np.isfinite(z))
            if ok and len(z) > 1:
                disp = np.abs(z - s)
                gaps = np.abs(z[:, None] - z[None, :])
                np.fill_diagonal(gaps, np.inf)
                bound = cfg.separation_factor * (disp[:, None] + disp[None, :])
                ok = bool(np.all(gaps > bound))
            if ok:
                s, t, tau = z, t1, tau + h
                h = min(h * 1.5, cfg.max_step)
            else:
                h /= 2
                if h < cfg.min_step:
                    raise ContinuationFailure(f"step size underflow near t={t1}")
    return s


def _match(final: np.ndarray, initial: np.ndarray) -> Permutation:
    n = len(initial)
    if n == 1:
        return Permutation((0,))
    gaps = np.abs(initial[:, None] - initial[None, :])
    np.fill_diagonal(gaps, np.inf)
    sep = float(gaps.min())
    img = []
    for z in final:
        d = np.abs(initial - z)
        k = int(np.argmin(d))
        if d[k] > 1e-3 * sep:
            raise ContinuationFailure("lifted path did not return to the fiber")
        img.append(k)
    try:
        return Permutation(tuple(img))
    except ValueError as exc:
        raise ContinuationFailure("lifted endpoints collide") from exc


@dataclass
class _Loops:
    chart: _Chart
    base: complex
    order: list[int]  # indices into the branch point list, in loop order
    radii: list[float]
    points: list[complex]


def _dist_to_segment(c: complex, a: complex, b: complex) -> float:
    ab = b - a
    if ab == 0:
        return abs(c - a)
    s = ((c - a) * ab.conjugate()).real / abs(ab) ** 2
    s = min(1.0, max(0.0, s))
    return abs(c - (a + s * ab))


def _plan_loops(branch: list[SpherePoint], maps: list[_PolyMap] | None, chart: _Chart,
                cfg: ContinuationConfig, avoid: list[complex]) -> _Loops:
    """Base point and loop radii for the bouquet around the branch points.

    Each loop radius starts at a quarter of the distance to the nearest other
    branch point (capped by half the distance to any value taken at infinity)
    and is then shrunk so the base point stays outside the circle and every
    radial segment passes ``cfg.clearance`` radii clear of the other loops.

    Base points are Gaussian rationals tried in order of height.  The first
    one whose radii all stay above ``cfg.min_radius_ratio`` of their starting
    size wins; failing that, the best candidate seen is used as long as it
    keeps a sixty-fourth of that ratio.
    """
    pts = [chart.point(b) for b in branch]
    k = len(pts)
    base_radii = []
    for i in range(k):
        cap = [0.25 * abs(pts[i] - pts[j]) for j in range(k) if j != i]
        cap += [0.5 * abs(pts[i] - c) for c in avoid]
        base_radii.append(min(cap) if cap else 0.5)
    admissible = 0
    best = None
    rats = _rationals_by_height(cfg.max_base_height)
    for z0 in _gaussian_candidates(rats):
        if any(abs(z0 - c) < 1e-3 for c in avoid) or any(abs(z0 - p) < 1e-9 for p in pts):
            continue
        radii = _fit_radii(z0, pts, base_radii, cfg.clearance)
        margin = 0.25 * min(radii)
        if any(_dist_to_segment(c, z0, p) < margin for c in avoid for p in pts):
            continue
        score = min(r / b for r, b in zip(radii, base_radii))
        if score < cfg.min_radius_ratio:
            if best is None or score > best[0]:
                best = (score, z0, radii)
            continue
        if admissible < cfg.base_index:
            admissible += 1
            continue
        return _make_loops(chart, z0, radii, pts)
    if best is not None and best[0] > cfg.min_radius_ratio / 64 and cfg.base_index == 0:
        return _make_loops(chart, best[1], best[2], pts)
    raise ContinuationFailure("no admissible base point found")


def _fit_radii(z0: complex, pts: list[complex], base_radii: list[float], clearance: float) -> list[float]:
    """Largest radii below the base ones that keep every radial segment clear."""
    radii = []
    for j, (p, r) in enumerate(zip(pts, base_radii)):
        r = min(r, 0.5 * abs(z0 - p))
        for i, q in enumerate(pts):
            if i != j:
                r = min(r, _dist_to_segment(p, z0, q) / clearance)
        radii.append(r)
    return radii


def _make_loops(chart: _Chart, z0: complex, radii: list[float], pts: list[complex]) -> _Loops:
    order = sorted(range(len(pts)), key=lambda i: (cmath.phase(pts[i] - z0), abs(pts[i] - z0)))
    return _Loops(chart, z0, order, radii, pts)


def _gaussian_candidates(rats: list[Fraction]):
    by_h: dict[int, list[Fraction]] = {}
    for r in rats:
        by_h.setdefault(_height(r), []).append(r)
    hs = sorted(by_h)
    for H in hs:
        cands = []
        for x in rats:
            if _height(x) > H:
                continue
            for y in rats:
                if y == 0 or _height(y) > H:
                    continue
                if max(_height(x), _height(y)) == H:
                    cands.append(complex(float(x), float(y)))
        cands.sort(key=lambda z: (abs(z), z.real, z.imag))
        yield from cands


def _avoid_points(maps: list[_PolyMap], pts: list[complex]) -> list[complex]:
    out = []
    for pm in maps:
        c = pm.at_infinity
        if c is None or not np.isfinite(c):
            continue
        if all(abs(c - p) > 1e-9 for p in pts):
            out.append(complex(c))
    return out


def _lift_all(maps: list[_PolyMap], loops: _Loops, cfg: ContinuationConfig):
    """Permutations of each map's base fiber, per branch point, in loop order."""
    results = []
    for pm in maps:
        start = pm.fiber(loops.base)
        perms = []
        for i in loops.order:
            pieces = _path_pieces(loops.base, loops.points[i], loops.radii[i])
            perms.append(_match(_track(pm, pieces, start, cfg), start))
        results.append((start, perms))
    return results


def _union_points(portraits: list[RamificationPortrait]) -> list[SpherePoint]:
    out: list[SpherePoint] = []
    for por in portraits:
        for v in por.critical_values:
            if not any(v.same_as(w) for w in out):
                out.append(v)
    return out


def monodromy_constellation(f: RationalFunction, config: ContinuationConfig | None = None,
                            portrait: RamificationPortrait | None = None) -> Constellation:
    """Constellation of ``f`` with invariants asserted."""
    cfg = config or ContinuationConfig()
    if f.degree < 2:
        raise ValueError("monodromy needs degree >= 2")
    portrait = portrait or ramification_portrait(f, cfg.max_bits)
    branch = list(portrait.critical_values)
    chart = _choose_chart(branch)
    num, den = chart.maps(f)
    pm = _PolyMap(num, den, f.degree)
    pts = [chart.point(b) for b in branch]
    loops = _plan_loops(branch, [pm], chart, cfg, _avoid_points([pm], pts))
    ((start, perms),) = _lift_all([pm], loops, cfg)
    ordered = [branch[i] for i in loops.order]
    c = Constellation(chart.unmap(loops.base), tuple(ordered), tuple(perms), tuple(complex(z) for z in start))
    _check_constellation(c, portrait)
    return c


def _check_constellation(c: Constellation, portrait: RamificationPortrait | None):
    n = c.degree
    if not c.product().is_identity():
        raise InvariantViolation("product of the branch permutations is not the identity")
    if not is_transitive(c.perms, n):
        raise InvariantViolation("monodromy group is not transitive")
    if portrait is not None:
        for b, p in zip(c.branch_points, c.perms):
            br = portrait.branch_at(b)
            expected = br.fiber if br is not None else (1,) * n
            if p.cycle_type() != expected:
                raise InvariantViolation(
                    f"cycle type {p.cycle_type()} over {b} differs from portrait {expected}"
                )


# ---------------------------------------------------------------------------
# fiber products


@dataclass(frozen=True)
class FiberComponent:
    cells: tuple[tuple[int, int], ...]
    induced_perms: tuple[Permutation, ...]
    local_degrees: tuple[tuple[int, ...], ...]  # cycle type over each branch point
    lcm_law: bool

    @property
    def degree(self) -> int:
        return len(self.cells)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "cells": [[r + 1, c + 1] for r, c in self.cells],
            "local_degrees": [list(t) for t in self.local_degrees],
            "lcm_law": self.lcm_law,
        }


@dataclass(frozen=True)
class FiberProduct:
    components: tuple[FiberComponent, ...]
    branch_points: tuple[SpherePoint, ...]
    alphas: tuple[Permutation, ...]
    betas: tuple[Permutation, ...]
    base: complex

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(sorted((c.degree for c in self.components), reverse=True))

    def to_json(self) -> dict:
        return {
            "components": [c.to_json() for c in self.components],
            "branch_points": [point_to_json(b) for b in self.branch_points],
            "alpha": [p.to_json() for p in self.alphas],
            "beta": [p.to_json() for p in self.betas],
            "base": {"re": self.base.real, "im": self.base.imag},
        }


def grid_permutation(alpha: Permutation, beta: Permutation) -> Permutation:
    """Rows moved by ``alpha`` and columns by ``beta`` on the n x m grid."""
    n, m = len(alpha), len(beta)
    return Permutation(tuple(alpha.images[r] * m + beta.images[c] for r in range(n) for c in range(m)))


def grid_components(alphas, betas, n: int, m: int) -> list[FiberComponent]:
    deltas = [grid_permutation(a, b) for a, b in zip(alphas, betas)]
    comps = []
    for orbit in orbits(deltas, n * m):
        induced = tuple(d.restrict(orbit) for d in deltas)
        if not product(induced, len(orbit)).is_identity():
            raise InvariantViolation("component permutations do not have product one")
        lcm_ok = True
        for a, b, d in zip(alphas, betas, deltas):
            alen = {i: len(cyc) for cyc in a.cycles() for i in cyc}
            blen = {i: len(cyc) for cyc in b.cycles() for i in cyc}
            for cyc in d.restrict(orbit).cycles():
                cell = orbit[cyc[0]]
                r, c = divmod(cell, m)
                if len(cyc) != math.lcm(alen[r], blen[c]):
                    lcm_ok = False
        cells = tuple(divmod(i, m) for i in orbit)
        comps.append(FiberComponent(cells, induced, tuple(p.cycle_type() for p in induced), lcm_ok))
    comps.sort(key=lambda c: (-c.degree, c.cells[0]))
    return comps


def fiber_product(f: RationalFunction, g: RationalFunction,
                  config: ContinuationConfig | None = None) -> FiberProduct:
    """Joint constellations of f and g over the union of their critical values."""
    cfg = config or ContinuationConfig()
    if f.degree < 1 or g.degree < 1:
        raise ValueError("fiber product needs nonconstant maps")
    pf = ramification_portrait(f, cfg.max_bits) if f.degree > 1 else RamificationPortrait(1, ())
    pg = ramification_portrait(g, cfg.max_bits) if g.degree > 1 else RamificationPortrait(1, ())
    branch = _union_points([pf, pg])
    n, m = f.degree, g.degree
    if not branch:
        ident = (Permutation.identity(1),)
        comp = grid_components(ident, ident, 1, 1)
        return FiberProduct(tuple(comp), (), ident, ident, 0j)
    chart = _choose_chart(branch)
    maps = [_PolyMap(*chart.maps(f), n), _PolyMap(*chart.maps(g), m)]
    pts = [chart.point(b) for b in branch]
    loops = _plan_loops(branch, maps, chart, cfg, _avoid_points(maps, pts))
    (_, alphas), (_, betas) = _lift_all(maps, loops, cfg)
    ordered = tuple(branch[i] for i in loops.order)
    for label, perms, por, deg in (("f", alphas, pf, n), ("g", betas, pg, m)):
        c = Constellation(loops.base, ordered, tuple(perms))
        _check_constellation(c, por if deg > 1 else None)
    comps = grid_components(alphas, betas, n, m)
    if sum(c.degree for c in comps) != n * m:
        raise InvariantViolation("component degrees do not sum to deg f * deg g")
    return FiberProduct(tuple(comps), ordered, tuple(alphas), tuple(betas), chart.unmap(loops.base))


def fiber_product_components(f: RationalFunction, g: RationalFunction,
                             config: ContinuationConfig | None = None) -> list[FiberComponent]:
    return list(fiber_product(f, g, config).components)


# ---------------------------------------------------------------------------
# goodness


@dataclass(frozen=True)
class GoodnessReport:
    unique_component: bool
    no_common_right_factor: bool
    degree_symmetry: bool
    good: bool
    component_degrees: tuple[int, ...]
    coprime_local_degrees: bool | None
    two_of_three_consistent: bool
    common_factor_degree: int

    def to_json(self) -> dict:
        return {
            "unique_component": self.unique_component,
            "no_common_right_factor": self.no_common_right_factor,
            "degree_symmetry": self.degree_symmetry,
            "good": self.good,
            "component_degrees": list(self.component_degrees),
            "coprime_local_degrees": self.coprime_local_degrees,
            "two_of_three_consistent": self.two_of_three_consistent,
            "common_factor_degree": self.common_factor_degree,
        }


def goodness_report(f: RationalFunction, p: RationalFunction, g: RationalFunction, q: RationalFunction,
                    config: ContinuationConfig | None = None) -> GoodnessReport:
    """Goodness of the solution ``f o p = g o q``.

    Good means a single fiber-product component for (f, g) and no common
    right factor of p and q; the degree symmetry is reported as the third
    condition of the any-two-of-three criterion.
    """
    from .decomposition import common_right_factor

    if not equals(f.compose(p), g.compose(q)):
        raise IdentityMismatch("f o p != g o q")
    fp = fiber_product(f, g, config)
    c1 = len(fp.components) == 1
    w = common_right_factor(p, q)
    c2 = w is None
    c3 = f.degree == q.degree and g.degree == p.degree
    good = c1 and c2
    consistent = not ((c1 + c2 + c3) >= 2 and not good)
    coprime = None
    if c2 and p.degree > 1 and q.degree > 1:
        coprime = coprime_local_degrees(p, q)
    return GoodnessReport(c1, c2, c3, good, fp.degrees, coprime, consistent,
                          1 if w is None else w.factor.degree)


def coprime_local_degrees(p: RationalFunction, q: RationalFunction) -> bool:
    """gcd(deg_z p, deg_z q) = 1 at every critical point of p or q."""
    pp, pq = ramification_portrait(p), ramification_portrait(q)
    for cp in pp.critical_points:
        if math.gcd(cp.local_degree, local_degree(q, cp.location, pq)) != 1:
            return False
    for cq in pq.critical_points:
        if math.gcd(cq.local_degree, local_degree(p, cq.location, pp)) != 1:
            return False
    return True


# ---------------------------------------------------------------------------
# audits on the fiber of a composite


def _group_by_value(fn: RationalFunction, pts, tol=1e-7) -> list[list[int]]:
    vals = [fn.eval_complex(z) for z in pts]
    blocks: list[list[int]] = []
    reps: list[complex] = []
    for i, v in enumerate(vals):
        for k, r in enumerate(reps):
            if _close(v, r, tol):
                blocks[k].append(i)
                break
        else:
            reps.append(v)
            blocks.append([i])
    return blocks


def _close(a: complex, b: complex, tol: float) -> bool:
    from .ratfun import chordal

    return chordal(a, b) < tol


def block_cycle_check(f: RationalFunction, p: RationalFunction, g: RationalFunction, q: RationalFunction,
                      config: ContinuationConfig | None = None, max_elements: int = 400) -> bool:
    """For sigma in G_h fixing a q-block, compare its cycle type on that block
    with its cycle type on the p-blocks (equal for good solutions)."""
    h = f.compose(p)
    if not equals(h, g.compose(q)):
        raise IdentityMismatch("f o p != g o q")
    c = monodromy_constellation(h, config)
    pts = list(c.fiber)
    a_blocks = _group_by_value(p, pts)
    b_blocks = _group_by_value(q, pts)
    if len(a_blocks) != f.degree or len(b_blocks) != g.degree:
        raise InvariantViolation("block sizes do not match the decomposition degrees")
    a_index = {i: k for k, blk in enumerate(a_blocks) for i in blk}
    n = len(pts)
    seen = {Permutation.identity(n)}
    frontier = [Permutation.identity(n)]
    gens = list(c.perms) + [x.inverse() for x in c.perms]
    elements = []
    while frontier and len(seen) < max_elements:
        nxt = []
        for s in frontier:
            for gen in gens:
                t = s * gen
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
                    elements.append(t)
        frontier = nxt
    checked = 0
    for s in elements:
        for blk in b_blocks:
            bset = set(blk)
            if {s.images[i] for i in blk} != bset:
                continue
            on_block = s.restrict(blk).cycle_type()
            on_a = Permutation(tuple(a_index[s.images[blk_[0]]] for blk_ in a_blocks)).cycle_type()
            checked += 1
            if on_block != on_a:
                return False
    return checked > 0


def joint_fiber_degree(x: RationalFunction, b: RationalFunction, z0: complex = 0.3183098861837907 + 0.2718281828459045j,
                       tol: float = 1e-7) -> int:
    """Numeric degree of the maximal common right factor of x and b.

    Counts the points of the x-fiber through ``z0`` on which b also takes the
    value ``b(z0)``: this is the size of the common block through ``z0``.
    """
    if x.degree < 1 or b.degree < 1:
        return 1
    t0 = x.eval_complex(z0)
    pm = _PolyMap(x.num, x.den, x.degree)
    pts = pm.fiber(t0)
    target = b.eval_complex(z0)
    return sum(1 for z in pts if _close(b.eval_complex(z), target, tol))
