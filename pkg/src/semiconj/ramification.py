"""Critical structure of a rational function and its induced orbifolds.

Local degrees are exact: they come from factoring the Wronskian
``P'Q - PQ'`` and the fiber polynomials ``P - vQ`` over the rationals.
Critical values are exact whenever they are rational (``P/Q`` is constant
modulo the irreducible factor); the remaining ones are algebraic irrationals
and are grouped numerically on a precision ladder.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

import mpmath

from . import _sym
from .errors import ClusterAmbiguity, InternalInconsistency, InvariantViolation
from .ratfun import (
    Polynomial,
    RationalFunction,
    SpherePoint,
    evaluate,
    point_from_json,
    point_to_json,
    poly_xgcd,
)

log = logging.getLogger(__name__)

PRECISION_LADDER = (64, 128, 256, 512, 1024)
DEFAULT_MAX_BITS = 1024


@dataclass(frozen=True)
class FiberPoint:
    location: SpherePoint
    local_degree: int


CriticalPoint = FiberPoint


@dataclass(frozen=True)
class Branch:
    """A critical value together with its whole fiber."""

    value: SpherePoint
    points: tuple[FiberPoint, ...]

    @property
    def fiber(self) -> tuple[int, ...]:
        return tuple(sorted((p.local_degree for p in self.points), reverse=True))

    @property
    def critical_points(self) -> tuple[FiberPoint, ...]:
        return tuple(p for p in self.points if p.local_degree > 1)


@dataclass(frozen=True)
class RamificationPortrait:
    degree: int
    branches: tuple[Branch, ...]
    precision: int = 0

    @property
    def critical_values(self) -> list[SpherePoint]:
        return [b.value for b in self.branches]

    @property
    def critical_points(self) -> list[FiberPoint]:
        return [p for b in self.branches for p in b.critical_points]

    def branch_at(self, value: SpherePoint) -> Branch | None:
        hits = [b for b in self.branches if b.value.same_as(value)]
        if len(hits) > 1:
            raise ClusterAmbiguity(f"{value} matches several critical values")
        return hits[0] if hits else None

    def ramification_sum(self) -> int:
        return sum(p.local_degree - 1 for p in self.critical_points)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "branches": [
                {
                    "value": point_to_json(b.value),
                    "fiber": list(b.fiber),
                    "points": [
                        {"at": point_to_json(p.location), "e": p.local_degree}
                        for p in b.points
                    ],
                }
                for b in self.branches
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "RamificationPortrait":
        branches = []
        for b in obj["branches"]:
            pts = tuple(
                FiberPoint(point_from_json(p["at"]), int(p["e"])) for p in b.get("points", [])
            )
            branches.append(Branch(point_from_json(b["value"]), pts))
        return cls(int(obj["degree"]), tuple(branches))


@dataclass(frozen=True)
class Orbifold:
    """The sphere with a ramification function given on finitely many points."""

    points: tuple[tuple[SpherePoint, int], ...] = ()

    def __post_init__(self):
        for p, nu in self.points:
            if nu < 2:
                raise ValueError(f"ramification index {nu} at {p} must be >= 2")
        pts = [p for p, _ in self.points]
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                if pts[i].same_as(pts[j]):
                    raise ValueError(f"repeated orbifold point {pts[i]}")

    @classmethod
    def from_pairs(cls, pairs) -> "Orbifold":
        out = []
        for p, nu in pairs:
            if not isinstance(p, SpherePoint):
                p = point_from_json(p) if isinstance(p, str) else SpherePoint.exact(p)
            if nu > 1:
                out.append((p, int(nu)))
        return cls(tuple(out))

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(sorted(nu for _, nu in self.points))

    def nu(self, p: SpherePoint) -> int:
        hits = [nu for q, nu in self.points if q.same_as(p)]
        if len(hits) > 1:
            raise ClusterAmbiguity(f"{p} matches several orbifold points")
        return hits[0] if hits else 1

    def to_json(self) -> dict:
        return {"points": [{"at": point_to_json(p), "nu": nu} for p, nu in self.points]}

    @classmethod
    def from_json(cls, obj: dict) -> "Orbifold":
        return cls.from_pairs((point_from_json(p["at"]), int(p["nu"])) for p in obj["points"])


# ---------------------------------------------------------------------------


def _chart_infinity_degree(f: RationalFunction) -> int:
    """Local degree of f at the point at infinity."""
    pr, qr = f.reversed_chart()
    w = pr.derivative() * qr - pr * qr.derivative()
    return 1 + (w.root_multiplicity(0) if not w.is_zero() else 0)


def _residue_value(f: RationalFunction, phi: Polynomial):
    """Value of f on the roots of the irreducible ``phi``.

    Returns ``SpherePoint`` when it is the same rational (or infinity) for all
    roots, otherwise None.
    """
    qm = f.den % phi
    if qm.is_zero():
        return SpherePoint.infinity()
    _, s, _ = poly_xgcd(qm, phi)
    r = (f.num % phi) * s % phi
    if r.degree <= 0:
        return SpherePoint.exact(r[0])
    return None


def _fiber_polynomial(f: RationalFunction, v: SpherePoint) -> Polynomial:
    if v.is_infinity:
        return f.den
    return f.num - f.den.scale(v.value)


def exact_fiber(f: RationalFunction, v: SpherePoint, prec: int = 128) -> tuple[FiberPoint, ...]:
    """Fiber over an exact value with exact local degrees."""
    d = f.degree
    g = _fiber_polynomial(f, v)
    pts: list[FiberPoint] = []
    for psi, m in _sym.factor_q(g):
        if psi.degree == 1:
            pts.append(FiberPoint(SpherePoint.exact(-psi[0]), m))
        else:
            for z in _sym.polyroots(psi.coeffs, prec):
                pts.append(FiberPoint(_num_point(z, prec), m))
    if g.degree < d:
        pts.append(FiberPoint(SpherePoint.infinity(), d - g.degree))
    return tuple(_sorted_points(pts))


def numeric_fiber(f: RationalFunction, v: complex, prec: int = 128) -> tuple[FiberPoint, ...]:
    """Fiber over a numeric value assumed to be a regular value."""
    with mpmath.workprec(prec):
        vv = mpmath.mpc(v)
        cs = [_sym._mp(a) - vv * _sym._mp(b) for a, b in _pairs(f.num, f.den)]
        roots = _sym.polyroots(cs, prec)
    return tuple(_sorted_points(FiberPoint(_num_point(z, prec), 1) for z in roots))


def fiber(f: RationalFunction, v: SpherePoint, portrait: RamificationPortrait | None = None,
          prec: int = 128) -> tuple[FiberPoint, ...]:
    """All preimages of ``v`` with local degrees."""
    if portrait is not None:
        b = portrait.branch_at(v)
        if b is not None:
            return b.points
    if v.is_exact:
        return exact_fiber(f, v, prec)
    return numeric_fiber(f, v.approx, prec)


def _pairs(a: Polynomial, b: Polynomial):
    n = max(len(a.coeffs), len(b.coeffs))
    return [(a[i], b[i]) for i in range(n)]


def _num_point(z, prec: int) -> SpherePoint:
    zc = complex(z)
    return SpherePoint.numeric(zc, 2.0 ** (-prec / 2) * (1 + abs(zc)))


def _point_key(p: SpherePoint):
    if p.is_exact:
        if p.is_infinity:
            return (1, 0.0, 0.0, Fraction(0))
        return (0, float(p.u), 0.0, p.u)
    return (0, round(p.approx.real, 9), round(p.approx.imag, 9), Fraction(0))


def _sorted_points(pts):
    return sorted(pts, key=lambda fp: (_point_key(fp.location), -fp.local_degree))


def ramification_portrait(f: RationalFunction, max_bits: int = DEFAULT_MAX_BITS) -> RamificationPortrait:
    """Critical values of ``f`` with the local degrees over each of them."""
    d = f.degree
    if d < 1:
        raise ValueError("constant maps have no ramification portrait")
    if d == 1:
        return RamificationPortrait(1, ())
    P, Q = f.num, f.den
    W = P.derivative() * Q - P * Q.derivative()

    exact_vals: list[SpherePoint] = []
    numeric_classes: list[tuple[Polynomial, int]] = []

    def add_exact(v: SpherePoint):
        if not any(v.same_as(w) for w in exact_vals):
            exact_vals.append(v)

    for phi, k in _sym.factor_q(W):
        val = _residue_value(f, phi)
        if val is None:
            numeric_classes.append((phi, k + 1))
        else:
            add_exact(val)
    e_inf = _chart_infinity_degree(f)
    if e_inf > 1:
        add_exact(f.value_at_infinity())

    exact_vals.sort(key=_point_key)
    branches = [Branch(v, exact_fiber(f, v)) for v in exact_vals]
    prec_used = 0
    if numeric_classes:
        nb, prec_used = _numeric_branches(f, numeric_classes, max_bits)
        branches.extend(nb)

    portrait = RamificationPortrait(d, tuple(branches), prec_used)
    for b in portrait.branches:
        if sum(b.fiber) != d:
            raise InvariantViolation(f"fiber over {b.value} sums to {sum(b.fiber)} != {d}")
    if portrait.ramification_sum() != 2 * d - 2:
        raise InvariantViolation(
            f"Riemann-Hurwitz sum {portrait.ramification_sum()} != {2 * d - 2}"
        )
    return portrait


def _numeric_branches(f, classes, max_bits):
    ladder = [p for p in PRECISION_LADDER if p <= max_bits] or [max_bits]
    last_err = None
    for prec in ladder:
        try:
            return _numeric_branches_at(f, classes, prec), prec
        except _Ambiguous as exc:
            log.debug("precision %d ambiguous: %s", prec, exc)
            last_err = exc
    raise ClusterAmbiguity(f"critical values not separated at {ladder[-1]} bits: {last_err}")


class _Ambiguous(Exception):
    pass


def _numeric_branches_at(f, classes, prec):
    d = f.degree
    items = []
    with mpmath.workprec(prec):
        for phi, e in classes:
            for z in _sym.polyroots(phi.coeffs, prec):
                val = _sym.peval_mp(f.num, z) / _sym.peval_mp(f.den, z)
                items.append((val, z, e))
        n = len(items)
        parent = list(range(n))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for i in range(n):
            for j in range(i + 1, n):
                vi, vj = items[i][0], items[j][0]
                scale = 1 + max(abs(vi), abs(vj))
                dist = abs(vi - vj)
                if dist <= mpmath.mpf(2) ** (-0.6 * prec) * scale:
                    parent[find(i)] = find(j)
                elif dist <= mpmath.mpf(2) ** (-0.2 * prec) * scale:
                    raise _Ambiguous(f"values {complex(vi)} and {complex(vj)} too close")
        groups: dict[int, list[int]] = {}
        for i in range(n):
            groups.setdefault(find(i), []).append(i)

        branches = []
        for idx in groups.values():
            v = sum(items[i][0] for i in idx) / len(idx)
            crit = [(items[i][1], items[i][2]) for i in idx]
            ecount = sum(e for _, e in crit)
            if ecount > d:
                raise _Ambiguous("critical points over one value exceed the degree")
            pts = [FiberPoint(_num_point(z, prec), e) for z, e in crit]
            simple = d - ecount
            if simple:
                gprec = max(prec, 32 * max(e for _, e in crit))
                with mpmath.workprec(gprec):
                    cs = [_sym._mp(a) - v * _sym._mp(b) for a, b in _pairs(f.num, f.den)]
                    roots = list(_sym.polyroots(cs, gprec))
                    for z, e in crit:
                        roots.sort(key=lambda r: abs(r - z))
                        roots = roots[e:]
                if len(roots) != simple:
                    raise _Ambiguous("fiber size mismatch")
                pts.extend(FiberPoint(_num_point(z, prec), 1) for z in roots)
            vc = complex(v)
            radius = float(mpmath.mpf(2) ** (-0.6 * prec)) * (1 + abs(vc))
            branches.append(Branch(SpherePoint.numeric(vc, radius), tuple(_sorted_points(pts))))
    branches.sort(key=lambda b: _point_key(b.value))
    return branches


def orbifold_pair(f: RationalFunction, portrait: RamificationPortrait | None = None,
                  max_bits: int = DEFAULT_MAX_BITS) -> tuple[Orbifold, Orbifold]:
    """The induced orbifolds ``(O_1^f, O_2^f)``.

    ``nu_2`` is the lcm of the local degrees over each point and
    ``nu_1(z) = nu_2(f(z)) / deg_z f``, so f covers ``O_1^f -> O_2^f``.
    """
    if f.degree < 2:
        raise ValueError("orbifold_pair needs degree >= 2")
    portrait = portrait or ramification_portrait(f, max_bits)
    o2, o1 = [], []
    for b in portrait.branches:
        nu2 = reduce(math.lcm, b.fiber, 1)
        o2.append((b.value, nu2))
        for p in b.points:
            if nu2 % p.local_degree:
                raise InternalInconsistency(
                    f"lcm {nu2} not divisible by local degree {p.local_degree}"
                )
            o1.append((p.location, nu2 // p.local_degree))
    return Orbifold.from_pairs(o1), Orbifold.from_pairs(o2)


def critical_values(f: RationalFunction, max_bits: int = DEFAULT_MAX_BITS) -> list[SpherePoint]:
    return ramification_portrait(f, max_bits).critical_values


def local_degree(f: RationalFunction, z: SpherePoint, portrait: RamificationPortrait | None = None) -> int:
    """``deg_z f`` at an exact or numeric point."""
    if z.is_exact:
        if z.is_infinity:
            return _chart_infinity_degree(f)
        v = evaluate(f, z)
        g = _fiber_polynomial(f, v)
        return g.root_multiplicity(z.value)
    portrait = portrait or ramification_portrait(f)
    hits = [p for p in portrait.critical_points if p.location.same_as(z)]
    if len(hits) > 1:
        raise ClusterAmbiguity(f"{z} matches several critical points")
    return hits[0].local_degree if hits else 1
