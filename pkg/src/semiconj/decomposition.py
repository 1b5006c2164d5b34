"""Common right factors, primitivity, and left-factor witnesses.

Everything here is exact.  A common right factor of X and B is read off the
bivariate gcd of ``X(x) - X(y)`` and ``B(x) - B(y)``: made monic in y, any
nonconstant coefficient generates the same field as the factor (Lüroth), so
it is itself a right factor of the right degree.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import sympy
from sympy.polys.matrices import DomainMatrix

from ._sym import X as SX
from ._sym import Y as SY
from ._sym import bivariate, from_sympy, to_sympy
from .errors import DegreeMismatch, ExtractionFailure
from .ratfun import ONE, Polynomial, RationalFunction, chebyshev, compose, equals, joukowski, power

QQ = sympy.QQ


@dataclass(frozen=True)
class FactorWitness:
    """``X = cofactors[0] o factor`` and ``B = cofactors[1] o factor``, verified."""

    factor: RationalFunction
    cofactors: tuple[RationalFunction, RationalFunction]

    def to_json(self) -> dict:
        from .ratfun import rf_to_json

        return {
            "factor": rf_to_json(self.factor),
            "degree": self.factor.degree,
            "cofactors": [rf_to_json(c) for c in self.cofactors],
        }


def difference_curve(f: RationalFunction) -> sympy.Poly:
    """Numerator of ``f(x) - f(y)`` as a polynomial in x, y."""
    return bivariate(f.num, f.den, f.num, f.den)


def _coeffs_in_y(g: sympy.Poly) -> list[tuple[Polynomial, int]]:
    """Coefficients of ``g`` as polynomials in x, indexed by powers of y."""
    by_k: dict[int, dict[int, Fraction]] = {}
    for (i, k), c in g.terms():
        by_k.setdefault(k, {})[i] = Fraction(int(c.numerator), int(c.denominator))
    out = []
    for k, cs in by_k.items():
        top = max(cs)
        out.append((Polynomial(cs.get(i, 0) for i in range(top + 1)), k))
    return sorted(out, key=lambda t: t[1])


def luroth_generator(g: sympy.Poly) -> RationalFunction | None:
    """Lowest-index nonconstant coefficient of ``g`` made monic in y."""
    coeffs = _coeffs_in_y(g)
    d = max(k for _, k in coeffs)
    lead = next(c for c, k in coeffs if k == d)
    for c, k in coeffs:
        if k == d:
            continue
        w = RationalFunction.from_polys(c, lead)
        if w.degree > 0:
            return w
    return None


def normalize_factor(w: RationalFunction) -> RationalFunction:
    """Deterministic representative of ``mu o w`` over affine mu.

    Polynomials become monic with zero constant term; other maps get a monic
    numerator.
    """
    if w.is_polynomial():
        p = w.num - Polynomial([w.num[0]])
        return RationalFunction(p.scale(1 / p.lc), ONE)
    return RationalFunction.from_polys(w.num.scale(1 / w.num.lc), w.den)


def left_cofactor(h: RationalFunction, w: RationalFunction) -> RationalFunction | None:
    """The map L with ``h = L o w``, by exact linear algebra; None if there is none."""
    k = w.degree
    if k < 1 or h.degree % k:
        return None
    e = h.degree // k
    u, v = w.num, w.den
    upow, vpow = [ONE], [ONE]
    for _ in range(e):
        upow.append(upow[-1] * u)
        vpow.append(vpow[-1] * v)
    monos = [upow[i] * vpow[e - i] for i in range(e + 1)]
    # unknowns: a_0..a_e (numerator of L), b_0..b_e (denominator of L)
    # h.num * sum b_i mono_i - h.den * sum a_i mono_i = 0
    cols = [-(h.den * m) for m in monos] + [h.num * m for m in monos]
    nrows = max(c.degree for c in cols) + 1
    rows = [[QQ(c[r].numerator, c[r].denominator) for c in cols] for r in range(nrows)]
    ns = DomainMatrix(rows, (nrows, len(cols)), QQ).nullspace().to_Matrix()
    if ns.rows != 1:
        return None
    vec = [Fraction(int(sympy.fraction(x)[0]), int(sympy.fraction(x)[1])) for x in ns.row(0)]
    a, b = Polynomial(vec[: e + 1]), Polynomial(vec[e + 1:])
    if b.is_zero():
        return None
    L = RationalFunction.from_polys(a, b)
    return L if L.degree == e and equals(compose(L, w), h) else None


def _extract(x: RationalFunction, b: RationalFunction) -> tuple[int, FactorWitness | None]:
    g = sympy.gcd(difference_curve(x), difference_curve(b))
    g = sympy.Poly(g, SX, SY, domain="QQ")
    d = g.degree(SY)
    if d <= 1:
        return d, None
    w = luroth_generator(g)
    if w is None or w.degree != d:
        raise ExtractionFailure("no nonconstant coefficient of the right degree")
    w = normalize_factor(w)
    xt, bt = left_cofactor(x, w), left_cofactor(b, w)
    if xt is None or bt is None:
        raise ExtractionFailure("cofactor solve failed")
    return d, FactorWitness(w, (xt, bt))


_RETRY_MOBIUS = (
    RationalFunction.mobius(1, 1, 0, 1),
    RationalFunction.mobius(0, 1, 1, 0),
    RationalFunction.mobius(1, 0, 1, 1),
)


def common_right_factor(x: RationalFunction, b: RationalFunction) -> FactorWitness | None:
    """Maximal common right factor W (deg W > 1) with verified cofactors, or None."""
    if x.degree < 1 or b.degree < 1:
        raise ValueError("common_right_factor needs nonconstant maps")
    if x.degree == 1 or b.degree == 1:
        return None
    try:
        return _extract(x, b)[1]
    except ExtractionFailure:
        pass
    for mu in _RETRY_MOBIUS:
        inv = _mobius_inverse(mu)
        try:
            _, wit = _extract(compose(x, mu), compose(b, mu))
        except ExtractionFailure:
            continue
        if wit is None:
            continue
        w = normalize_factor(compose(wit.factor, inv))
        xt, bt = left_cofactor(x, w), left_cofactor(b, w)
        if xt is not None and bt is not None:
            return FactorWitness(w, (xt, bt))
    raise ExtractionFailure("common right factor exists but could not be extracted")


def _mobius_inverse(mu: RationalFunction) -> RationalFunction:
    a, b = mu.num[1], mu.num[0]
    c, d = mu.den[1], mu.den[0]
    return RationalFunction.mobius(d, -b, -c, a)


def is_primitive_pair(x: RationalFunction, b: RationalFunction) -> bool:
    if x.degree <= 1 or b.degree <= 1:
        return True
    return common_right_factor(x, b) is None


# ---------------------------------------------------------------------------
# left factors


def _factors_xy(poly: sympy.Poly) -> list[sympy.Poly]:
    _, facs = poly.factor_list()
    return [sympy.Poly(f, SX, SY, domain="QQ") for f, _ in facs]


def left_factor_witness(f: RationalFunction, h: RationalFunction) -> RationalFunction | None:
    """Some w with ``h = f o w``, or None.

    Writing u for the value of w, the graph ``u = w(z)`` is a component of
    the curve ``f(u) = h(z)`` of degree one in u.  The irreducible factors of
    that curve over the rationals with u-degree one give all candidates, and
    each candidate is checked exactly.
    """
    if f.degree < 1 or h.degree < 1:
        raise ValueError("nonconstant maps required")
    if h.degree % f.degree:
        raise DegreeMismatch(f"deg f = {f.degree} does not divide deg h = {h.degree}")
    k = h.degree // f.degree
    curve = bivariate(f.num, h.den, h.num, f.den)  # f.num(x) h.den(y) - h.num(y) f.den(x)
    # roles: x plays w, y plays the source variable
    for fac in sorted(_factors_xy(curve), key=lambda p: (p.degree(SX), str(p.as_expr()))):
        if fac.degree(SX) != 1:
            continue
        a = sympy.Poly(fac.as_expr().coeff(SX, 1), SY, domain="QQ")
        c = sympy.Poly(fac.as_expr().coeff(SX, 0), SY, domain="QQ")
        w = RationalFunction.from_polys(-_poly_y(c), _poly_y(a))
        if w.degree == k and equals(compose(f, w), h):
            return w
    return None


def _poly_y(p: sympy.Poly) -> Polynomial:
    return from_sympy(sympy.Poly(p.as_expr().subs(SY, SX), SX, domain="QQ"))


@dataclass(frozen=True)
class Decomposition:
    """``h = left o right``."""

    left: RationalFunction
    right: RationalFunction


def right_factors(h: RationalFunction, k: int) -> list[RationalFunction]:
    """All right factors of degree k over the rationals, up to left Möbius maps.

    A right factor w divides the curve ``h(x) = h(y)`` as ``w(x) = w(y)``;
    so candidates are products of irreducible factors of that curve
    containing the diagonal with y-degree k.
    """
    n = h.degree
    if k < 1 or n % k:
        return []
    if k == 1:
        return [RationalFunction.identity()]
    curve = difference_curve(h)
    facs = _factors_xy(curve)
    diag = sympy.Poly(SX - SY, SX, SY, domain="QQ")
    rest = []
    for fac in facs:
        if sympy.Poly(fac.as_expr() - diag.as_expr(), SX, SY).is_zero or sympy.Poly(
            fac.as_expr() + diag.as_expr(), SX, SY
        ).is_zero:
            continue
        rest.append(fac)
    found: list[RationalFunction] = []
    for r in range(len(rest) + 1):
        for combo in itertools.combinations(rest, r):
            if 1 + sum(f.degree(SY) for f in combo) != k:
                continue
            g = diag
            for f in combo:
                g = g * f
            w = luroth_generator(g)
            if w is None or w.degree != k:
                continue
            w = normalize_factor(w)
            if left_cofactor(h, w) is None:
                continue
            if not any(_same_field(w, v) for v in found):
                found.append(w)
    return found


def _same_field(a: RationalFunction, b: RationalFunction) -> bool:
    """a = mu o b for a Möbius mu."""
    return a.degree == b.degree and left_cofactor(a, b) is not None


def decompositions(h: RationalFunction, left_degree: int) -> list[Decomposition]:
    """Every ``h = L o w`` over the rationals with deg L = left_degree, up to Möbius."""
    n = h.degree
    if left_degree < 1 or n % left_degree:
        return []
    out = []
    for w in right_factors(h, n // left_degree):
        L = left_cofactor(h, w)
        if L is not None:
            out.append(Decomposition(L, w))
    return out


# ---------------------------------------------------------------------------
# normal forms up to Möbius transformations

Z_ = sympy.Symbol("z")


@dataclass(frozen=True)
class MobiusWitness:
    """``L = alpha o F o beta`` with alpha, beta Möbius over an algebraic field."""

    family: str
    m: int
    alpha: sympy.Expr
    beta: sympy.Expr

    def to_json(self) -> dict:
        return {"family": self.family, "m": self.m, "alpha": str(self.alpha), "beta": str(self.beta)}


def normal_form(family: str, m: int) -> RationalFunction:
    if family == "power":
        return power(m)
    if family == "chebyshev":
        return chebyshev(m)
    if family == "joukowski":
        return joukowski(m)
    raise ValueError(f"unknown family {family!r}")


def _rf_expr(f: RationalFunction, z=Z_) -> sympy.Expr:
    return to_sympy(f.num, z).as_expr() / to_sympy(f.den, z).as_expr()


def _special_points(f: RationalFunction):
    """Critical points as (exact algebraic location or oo, local degree)."""
    w = f.num.derivative() * f.den - f.num * f.den.derivative()
    pts = []
    from ._sym import factor_q

    for phi, mult in factor_q(w):
        for r in sympy.roots(to_sympy(phi, Z_), Z_, multiple=True) or []:
            pts.append((sympy.nsimplify(r) if r.is_Rational else r, mult + 1))
    from .ramification import _chart_infinity_degree

    e_inf = _chart_infinity_degree(f)
    if e_inf > 1:
        pts.append((sympy.oo, e_inf))
    pts.sort(key=lambda t: (-t[1], _complexity(t[0])))
    return pts


def _complexity(x) -> tuple[int, int]:
    if x is sympy.oo:
        return (0, 0)
    return (0 if x.is_Rational else 1, sympy.count_ops(x))


def _mobius_through(src, dst) -> sympy.Expr | None:
    """Möbius map sending three points ``src[i]`` to ``dst[i]`` (oo allowed)."""
    a, b, c, d = sympy.symbols("a b c d")
    eqs = []
    for s, t in zip(src, dst):
        if s is sympy.oo and t is sympy.oo:
            eqs.append(c)
        elif s is sympy.oo:
            eqs.append(a - t * c)
        elif t is sympy.oo:
            eqs.append(c * s + d)
        else:
            eqs.append(a * s + b - t * (c * s + d))
    mat = sympy.Matrix([[sympy.expand(e).coeff(v) for v in (a, b, c, d)] for e in eqs])
    ns = mat.nullspace()
    if len(ns) != 1:
        return None
    va, vb, vc, vd = [sympy.radsimp(sympy.simplify(x)) for x in ns[0]]
    if sympy.simplify(va * vd - vb * vc) == 0:
        return None
    return (va * Z_ + vb) / (vc * Z_ + vd)


def _apply(expr: sympy.Expr, x):
    if x is sympy.oo:
        val = sympy.limit(expr, Z_, sympy.oo)
    else:
        num, den = sympy.fraction(sympy.together(expr))
        dv = sympy.simplify(den.subs(Z_, x))
        nv = sympy.simplify(num.subs(Z_, x))
        if dv == 0:
            return sympy.oo if nv != 0 else None
        val = nv / dv
    val = sympy.radsimp(sympy.simplify(val))
    return sympy.oo if val in (sympy.oo, -sympy.oo, sympy.zoo) else val


def _is_identity(lhs: sympy.Expr, rhs: sympy.Expr) -> bool:
    num, _ = sympy.fraction(sympy.together(lhs - rhs))
    num = sympy.expand(num)
    if num == 0:
        return True
    try:
        return sympy.Poly(num, Z_, extension=True).is_zero
    except (sympy.PolynomialError, NotImplementedError):
        return sympy.simplify(num) == 0


_SAMPLES = [sympy.Rational(x) for x in (0, 1, -1, 2, -2, 3, sympy.Rational(1, 2), sympy.Rational(-1, 3), 5, 7)]


def _alpha_for(L_expr, F_expr, beta) -> sympy.Expr | None:
    """Möbius alpha with ``alpha o F o beta = L`` matched on three sample points."""
    fb = sympy.together(F_expr.subs(Z_, beta))
    src, dst = [], []
    for s in _SAMPLES:
        x = _apply(fb, s)
        y = _apply(L_expr, s)
        if x is None or y is None or any(_eq(x, t) for t in src):
            continue
        src.append(x)
        dst.append(y)
        if len(src) == 3:
            break
    if len(src) < 3:
        return None
    return _mobius_through(src, dst)


def _eq(a, b) -> bool:
    if a is sympy.oo or b is sympy.oo:
        return a is b
    return sympy.simplify(a - b) == 0


def _preimages(F_expr, value) -> list:
    """Solutions of ``F(w) = value``, with oo when F has a pole there and value is oo."""
    if value is sympy.oo:
        den = sympy.denom(sympy.together(F_expr))
        sols = list(sympy.roots(sympy.Poly(den, Z_), multiple=True))
    else:
        num = sympy.numer(sympy.together(F_expr - value))
        sols = list(sympy.roots(sympy.Poly(num, Z_), multiple=True))
    return [sympy.nsimplify(x) if x.is_Rational else x for x in sols]


def _beta_candidates(L: RationalFunction, family: str, m: int):
    pts = _special_points(L)
    if L.degree == 1:
        return [Z_]
    if L.degree == 2:
        # all degree-2 maps are equivalent: match critical points and one regular point
        F = normal_form(family, m)
        qs = [q for q, _ in _special_points(F)]
        ps = [p for p, _ in pts]
        crit = set(ps) | set(qs)
        r = next(x for x in _SAMPLES if x not in crit)
        out = []
        # first try to send r to a point where F takes the value L(r): then alpha is the identity
        Lr = _apply(_rf_expr(L), r)
        F_expr = _rf_expr(F)
        targets = [] if Lr is None else _preimages(F_expr, Lr)
        for p0, p1 in itertools.permutations(ps, 2):
            for s in targets:
                beta = _mobius_through([p0, p1, r], [qs[0], qs[1], s])
                if beta is not None:
                    out.append(beta)
        for p0, p1 in itertools.permutations(ps, 2):
            beta = _mobius_through([p0, p1, r], [qs[0], qs[1], r])
            if beta is not None:
                out.append(beta)
        return out
    if family == "power":
        # the two fully ramified points go to 0 and oo
        full = [p for p, e in pts if e == L.degree]
        return [_ratio(p0, p1) for p0, p1 in itertools.permutations(full, 2)]
    if family == "chebyshev":
        full = [p for p, e in pts if e == m]
        out = []
        for pinf in full:
            nu = Z_ if pinf is sympy.oo else 1 / (Z_ - pinf)
            finite = [p for p, _ in pts if p is not pinf]
            crit = [(_apply(nu, p), e) for p, e in pts if p is not pinf]
            # centre of mass of the finite critical points goes to 0, second moment matches T_m
            tot = sum(e - 1 for _, e in crit)
            if tot != m - 1 or not finite:
                continue
            centre = sympy.simplify(sum((e - 1) * c for c, e in crit) / tot)
            s2 = sympy.simplify(sum((e - 1) * (c - centre) ** 2 for c, e in crit))
            if s2 == 0:
                continue
            scale = sympy.sqrt(sympy.Rational(m - 2, 2) / s2)
            out.append(sympy.radsimp(scale * (nu - centre)))
        return out
    if family == "joukowski":
        deg_m = [p for p, e in pts if e == m]
        doubles = [p for p, e in pts if e == 2]
        out = []
        for p0, p1 in itertools.permutations(deg_m, 2):
            if not _eq(_apply(_rf_expr(L), p0), _apply(_rf_expr(L), p1)):
                continue
            base = _ratio(p0, p1)
            for c in doubles:
                if c is p0 or c is p1:
                    continue
                bc = _apply(base, c)
                if bc in (0, sympy.oo) or bc is None:
                    continue
                out.append(sympy.radsimp(base / bc))
        return out
    raise ValueError(family)


def _ratio(p0, p1):
    if p1 is sympy.oo:
        return Z_ - p0
    if p0 is sympy.oo:
        return 1 / (Z_ - p1)
    return (Z_ - p0) / (Z_ - p1)


def mobius_witness(L: RationalFunction, family: str, m: int, max_tries: int = 24) -> MobiusWitness | None:
    """Exhibit ``L = alpha o F o beta`` for the normal form F of the family, verified exactly."""
    F = normal_form(family, m)
    if F.degree != L.degree:
        return None
    L_expr = _rf_expr(L)
    F_expr = _rf_expr(F)
    best = None
    for beta in _beta_candidates(L, family, m)[:max_tries]:
        alpha = _alpha_for(L_expr, F_expr, beta)
        if alpha is None:
            continue
        rhs = alpha.subs(Z_, F_expr.subs(Z_, beta))
        if _is_identity(L_expr, rhs):
            wit = MobiusWitness(family, m, sympy.simplify(alpha), sympy.simplify(beta))
            if wit.alpha == Z_:
                return wit  # L = F o beta needs no change on the value side
            cost = sympy.count_ops(wit.alpha) + sympy.count_ops(wit.beta)
            if best is None or cost < best[0]:
                best = (cost, wit)
    return None if best is None else best[1]
