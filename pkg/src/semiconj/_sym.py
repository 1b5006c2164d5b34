"""Bridges to sympy (factorization, bivariate gcd) and mpmath (roots)."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import mpmath
import sympy

from .ratfun import Polynomial

X, Y = sympy.symbols("x y")


def to_sympy(p: Polynomial, var=X) -> sympy.Poly:
    coeffs = [sympy.Rational(c.numerator, c.denominator) for c in reversed(p.coeffs)] or [0]
    return sympy.Poly(coeffs, var, domain="QQ")


def from_sympy(poly) -> Polynomial:
    if not isinstance(poly, sympy.Poly):
        poly = sympy.Poly(poly, X, domain="QQ")
    cs = poly.all_coeffs()
    return Polynomial(Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1])) for c in reversed(cs))


@lru_cache(maxsize=4096)
def _factor_cached(coeffs: tuple[Fraction, ...]) -> tuple[tuple[tuple[Fraction, ...], int], ...]:
    p = Polynomial(coeffs)
    _, facs = to_sympy(p).factor_list()
    out = []
    for fac, mult in facs:
        q = from_sympy(fac).monic()
        out.append((q.coeffs, mult))
    out.sort(key=lambda t: (len(t[0]), [(c.numerator, c.denominator) for c in t[0]]))
    return tuple(out)


def factor_q(p: Polynomial) -> list[tuple[Polynomial, int]]:
    """Monic irreducible factors over the rationals with multiplicities."""
    if p.degree < 1:
        return []
    return [(Polynomial(c), m) for c, m in _factor_cached(p.coeffs)]


def bivariate(p_x: Polynomial, q_y: Polynomial, p_y: Polynomial, q_x: Polynomial) -> sympy.Poly:
    """``p_x(x) q_y(y) - p_y(y) q_x(x)`` as a sympy Poly in x, y."""
    a = to_sympy(p_x, X).as_expr() * to_sympy(q_y, Y).as_expr()
    b = to_sympy(p_y, Y).as_expr() * to_sympy(q_x, X).as_expr()
    return sympy.Poly(sympy.expand(a - b), X, Y, domain="QQ")


def polyroots(coeffs_low_first, prec: int):
    """All complex roots at ``prec`` bits; coefficients may be Fractions or mpc."""
    with mpmath.workprec(prec):
        cs = [mpmath.mpmathify(_mp(c)) for c in reversed(coeffs_low_first)]
        while cs and cs[0] == 0:
            cs.pop(0)
        if len(cs) <= 1:
            return []
        if len(cs) == 2:
            return [-cs[1] / cs[0]]
        deg = len(cs) - 1
        return list(mpmath.polyroots(cs, maxsteps=200 + 40 * deg, extraprec=2 * prec + 20 * deg))


def _mp(c):
    if isinstance(c, Fraction):
        return mpmath.mpf(c.numerator) / c.denominator
    return c


def peval_mp(p: Polynomial, z):
    acc = mpmath.mpc(0)
    for c in reversed(p.coeffs):
        acc = acc * z + _mp(c)
    return acc
