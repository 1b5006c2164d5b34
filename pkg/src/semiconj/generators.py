"""Explicit solutions of A o X = X o B and universal covers of small orbifolds."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    BadParameters,
    IdentityMismatch,
    InvariantViolation,
    SingularCurve,
    TranscriptionInvalid,
    Unsupported,
    UnsupportedRoot,
)
from .orbifold import Signature, Tag, classify_signature
from .ramification import orbifold_pair
from .ratfun import (
    Polynomial,
    RationalFunction,
    chebyshev,
    compose,
    equals,
    joukowski,
    parse,
    power,
    rf_to_json,
)

PROVENANCES = (
    "power",
    "chebyshev_TT",
    "chebyshev_TH",
    "dihedral_paper",
    "tetrahedral_paper",
    "lattes",
    "degenerate",
)


@dataclass(frozen=True)
class SemiconjugacyTriple:
    """A verified solution of ``A o X = X o B``."""

    A: RationalFunction
    X: RationalFunction
    B: RationalFunction
    provenance: str
    params: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")
        if not equals(compose(self.A, self.X), compose(self.X, self.B)):
            raise IdentityMismatch(f"{self.provenance}: A o X != X o B")

    @property
    def degrees(self) -> tuple[int, int, int]:
        return (self.A.degree, self.X.degree, self.B.degree)

    def to_json(self) -> dict:
        return {
            "A": rf_to_json(self.A),
            "X": rf_to_json(self.X),
            "B": rf_to_json(self.B),
            "provenance": self.provenance,
            "params": {k: str(v) for k, v in sorted(self.params.items())},
        }


def gen_power_family(r: int, R: RationalFunction, n: int, m: int) -> SemiconjugacyTriple:
    """``z^r R(z)^n o z^m = z^m o z^r R(z^m)^(n/m)``."""
    if m < 2 or n < 1 or n % m:
        raise BadParameters(f"need m >= 2 dividing n, got m={m}, n={n}")
    if math.gcd(r, n) != 1:
        raise BadParameters(f"gcd(r, n) = {math.gcd(r, n)} != 1")
    z_r = power(r)
    A = z_r * R ** n
    if A.degree < 2:
        raise BadParameters("A = z^r R^n has degree < 2")
    X = power(m)
    B = z_r * compose(R, X) ** (n // m)
    return SemiconjugacyTriple(A, X, B, "power", {"r": r, "R": R, "n": n, "m": m})


def gen_chebyshev_family(m: int, d: int, variant: str) -> SemiconjugacyTriple:
    """TT: ``T_m o T_d = T_d o T_m``; TH: ``T_m o H_d = H_d o z^m``."""
    if m < 2 or d < 2:
        raise BadParameters(f"need m, d >= 2, got m={m}, d={d}")
    variant = variant.upper()
    if variant == "TT":
        return SemiconjugacyTriple(chebyshev(m), chebyshev(d), chebyshev(m), "chebyshev_TT", {"m": m, "d": d})
    if variant == "TH":
        return SemiconjugacyTriple(chebyshev(m), joukowski(d), power(m), "chebyshev_TH", {"m": m, "d": d})
    raise BadParameters(f"unknown variant {variant!r}")


_PAPER = {
    "dihedral_n2": (
        "(64z^3-64z^2-23z+24)/(4z-5)^2",
        "1/2*(z^2+1/z^2)",
        "(z^2-2)/(z-2z^3)",
        "dihedral_paper",
    ),
    "tetrahedral": (
        "(4x-1)^3/(27x)",
        "z^3(8-z^3)^3/(64(z^3+1)^3)",
        "(2-z^3)/(3z)",
        "tetrahedral_paper",
    ),
}


def gen_paper_example(which: str) -> SemiconjugacyTriple:
    try:
        a, x, b, tag = _PAPER[which]
    except KeyError:
        raise BadParameters(f"unknown example {which!r}; choose from {sorted(_PAPER)}") from None
    try:
        return SemiconjugacyTriple(parse(a), parse(x), parse(b), tag, {"which": which})
    except IdentityMismatch as exc:
        raise TranscriptionInvalid(f"transcribed {which} example fails its identity") from exc


# ---------------------------------------------------------------------------
# Lattès maps


@dataclass(frozen=True)
class LattesConfig:
    g2: Fraction
    g3: Fraction
    m: int = 2

    def __post_init__(self):
        object.__setattr__(self, "g2", Fraction(self.g2))
        object.__setattr__(self, "g3", Fraction(self.g3))
        if self.m < 2:
            raise BadParameters("multiplier must be at least 2")

    @property
    def discriminant(self) -> Fraction:
        return self.g2 ** 3 - 27 * self.g3 ** 2


def _cubic(g2: Fraction, g3: Fraction) -> RationalFunction:
    """``4x^3 - g2 x - g3``, the square of the derivative of the Weierstrass function."""
    return RationalFunction.from_polys(Polynomial([-g3, -g2, 0, 4]))


def _doubling(g2: Fraction, g3: Fraction) -> RationalFunction:
    x = RationalFunction.identity()
    second = 6 * x ** 2 - RationalFunction.const(g2 / 2)
    return -2 * x + second ** 2 / (4 * _cubic(g2, g3))


def _tripling(g2: Fraction, g3: Fraction) -> RationalFunction:
    # addition of z and 2z: the slope is (P'(2z) - P'(z)) / (P(2z) - P(z)) with
    # P'(2z) = f2'(P) P'(z) / 2, so its square is cubic * (f2'/2 - 1)^2 / (f2 - x)^2
    x = RationalFunction.identity()
    f2 = _doubling(g2, g3)
    slope_sq = _cubic(g2, g3) * (f2.derivative() / 2 - 1) ** 2 / (f2 - x) ** 2
    return -f2 - x + slope_sq / 4


def gen_lattes(cfg: LattesConfig) -> RationalFunction:
    """The map f_m with P(m z) = f_m(P(z)) for the Weierstrass function P of (g2, g3).

    m = 2 and m = 3 come from the duplication and addition formulas; any
    m = 2^a 3^b is obtained by composing those.
    """
    if cfg.discriminant == 0:
        raise SingularCurve(f"g2^3 - 27 g3^2 = 0 for g2={cfg.g2}, g3={cfg.g3}")
    m, a, b = cfg.m, 0, 0
    while m % 2 == 0:
        m, a = m // 2, a + 1
    while m % 3 == 0:
        m, b = m // 3, b + 1
    if m != 1:
        raise Unsupported(f"multiplier {cfg.m} is not of the form 2^a 3^b")
    f = RationalFunction.identity()
    for _ in range(a):
        f = compose(_doubling(cfg.g2, cfg.g3), f)
    for _ in range(b):
        f = compose(_tripling(cfg.g2, cfg.g3), f)
    if f.degree != cfg.m ** 2:
        raise InvariantViolation(f"deg f_{cfg.m} = {f.degree}, expected {cfg.m ** 2}")
    return f


def gen_lattes_triple(g2, g3) -> SemiconjugacyTriple:
    """The commuting pair ``f_2 o f_3 = f_3 o f_2`` as a triple (f_2, f_3, f_2)."""
    f2 = gen_lattes(LattesConfig(g2, g3, 2))
    f3 = gen_lattes(LattesConfig(g2, g3, 3))
    return SemiconjugacyTriple(f2, f3, f2, "lattes", {"g2": Fraction(g2), "g3": Fraction(g3)})


# ---------------------------------------------------------------------------
# universal covers


def theta_universal_cover(sig: Signature | str) -> RationalFunction:
    """Universal cover of a cyclic, dihedral or tetrahedral spherical orbifold.

    Cyclic (n,n) gives z^n at {0, oo}; dihedral (2,2,n) gives H_n with its
    branch points at -1, 1 and oo; the tetrahedral cover has its (2,3,3) at
    1, 0 and oo.
    """
    if isinstance(sig, str):
        sig = Signature.parse(sig)
    if sig.tag is Tag.CYCLIC:
        theta = power(sig.indices[0])
    elif sig.tag is Tag.DIHEDRAL:
        theta = joukowski(sig.indices[-1])
    elif sig.tag is Tag.TETRAHEDRAL:
        theta = parse(_PAPER["tetrahedral"][1])
    else:
        raise Unsupported(f"no universal cover implemented for {sig}")
    got = classify_signature(orbifold_pair(theta)[1])
    if got != sig:
        raise InvariantViolation(f"cover has signature {got}, expected {sig}")
    return theta


def gen_degenerate(s: int, R: RationalFunction, n: int) -> SemiconjugacyTriple:
    """``eps^s z o x^s R(x^n) = x^s R(x^n) o eps z`` with ``eps^n = 1`` rational."""
    if n < 1:
        raise BadParameters("n must be positive")
    if n > 2:
        raise UnsupportedRoot(f"a primitive {n}-th root of unity is not rational")
    eps = -1 if n == 2 else 1
    X = power(s) * compose(R, power(n))
    A = RationalFunction.const(eps ** s) * RationalFunction.identity()
    B = RationalFunction.const(eps) * RationalFunction.identity()
    return SemiconjugacyTriple(A, X, B, "degenerate", {"s": s, "R": R, "n": n})


def degenerate_numeric_check(s: int, R: RationalFunction, n: int, samples: int = 16,
                             tol: float = 1e-9) -> float:
    """Numeric check of the degenerate identity for a primitive n-th root of unity.

    For n > 2 the multiplier is not rational, so the exact layer cannot hold it;
    this evaluates both sides in floating point at points on a spiral and
    returns the largest relative discrepancy, raising if it exceeds ``tol``.
    """
    import cmath

    if n < 1:
        raise BadParameters("n must be positive")
    eps = cmath.exp(2j * cmath.pi / n)
    X = power(s) * compose(R, power(n))
    worst = 0.0
    for k in range(samples):
        z = (0.3 + 0.1 * k) * cmath.exp(1j * (0.7 + 2.3 * k))
        try:
            lhs = eps ** s * X.eval_complex(z)
            rhs = X.eval_complex(eps * z)
        except ZeroDivisionError:
            continue
        worst = max(worst, abs(lhs - rhs) / max(1.0, abs(lhs)))
    if worst > tol:
        raise IdentityMismatch(f"numeric discrepancy {worst:.3g} for n={n}")
    return worst
