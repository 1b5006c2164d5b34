"""Exact rational functions on the Riemann sphere over the rationals.

Polynomials are tuples of :class:`fractions.Fraction` coefficients, lowest
degree first.  A :class:`RationalFunction` is always stored reduced, with a
monic denominator, so structural equality is equality of maps.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

from .errors import BothZero, ParseError

Scalar = Union[int, Fraction]


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, str):
        return Fraction(c.strip())
    if isinstance(c, float):
        raise TypeError("floats are not exact; pass a Fraction or a string")
    return Fraction(c)


class Polynomial:
    """Univariate polynomial with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    # construction helpers
    @classmethod
    def const(cls, c) -> "Polynomial":
        return cls([c])

    @classmethod
    def monomial(cls, n: int, c=1) -> "Polynomial":
        return cls([0] * n + [c])

    @classmethod
    def from_roots(cls, roots) -> "Polynomial":
        p = cls([1])
        for r in roots:
            p = p * cls([-_frac(r), 1])
        return p

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_const(self) -> bool:
        return len(self.coeffs) <= 1

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial([other])
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Polynomial({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        return poly_to_str(self)

    # ring operations
    def __add__(self, other) -> "Polynomial":
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other) -> "Polynomial":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "Polynomial":
        return _as_poly(other) - self

    def __mul__(self, other) -> "Polynomial":
        other = _as_poly(other)
        if not self.coeffs or not other.coeffs:
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result, base = Polynomial([1]), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        c = _frac(c)
        return Polynomial(a * c for a in self.coeffs)

    def divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        inv = 1 / other.lc
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] * inv
            if c:
                quot[k - dq] = c
                for j in range(dq + 1):
                    rem[k - dq + j] -= c * other.coeffs[j]
        return Polynomial(quot), Polynomial(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other) -> "Polynomial":
        return self.divmod(_as_poly(other))[0]

    def __mod__(self, other) -> "Polynomial":
        return self.divmod(_as_poly(other))[1]

    def monic(self) -> "Polynomial":
        return self.scale(1 / self.lc) if self.coeffs else self

    def derivative(self) -> "Polynomial":
        return Polynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def __call__(self, x):
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, inner: "Polynomial") -> "Polynomial":
        acc = Polynomial()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def reverse(self, n: int | None = None) -> "Polynomial":
        """Return ``z**n * p(1/z)``; ``n`` defaults to the degree."""
        n = self.degree if n is None else n
        cs = list(self.coeffs) + [Fraction(0)] * (n + 1 - len(self.coeffs))
        return Polynomial(reversed(cs[: n + 1]))

    def homogeneous(self, n: int, u, v):
        """Evaluate the degree-``n`` homogenization at ``(u, v)``."""
        acc = 0 * u
        for i in range(n + 1):
            c = self[i]
            if c:
                acc = acc + c * u**i * v ** (n - i)
        return acc

    def content(self) -> Fraction:
        """Positive rational g with self/g primitive integral."""
        from math import gcd, lcm

        if not self.coeffs:
            return Fraction(1)
        den = lcm(*(c.denominator for c in self.coeffs))
        num = gcd(*(c.numerator for c in self.coeffs))
        return Fraction(num, den)

    def root_multiplicity(self, x) -> int:
        """Multiplicity of the exact rational ``x`` as a root."""
        x = _frac(x)
        lin = Polynomial([-x, 1])
        p, m = self, 0
        if p.is_zero():
            raise ValueError("zero polynomial")
        while True:
            q, r = p.divmod(lin)
            if not r.is_zero():
                return m
            p, m = q, m + 1


def _as_poly(x) -> Polynomial:
    if isinstance(x, Polynomial):
        return x
    return Polynomial([x])


Z = Polynomial([0, 1])
ONE = Polynomial([1])


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd over the rationals (zero only if both are zero)."""
    while not b.is_zero():
        a, b = b, a % b
        if not b.is_zero():
            b = b.scale(1 / b.content())
    return a.monic()


def poly_xgcd(a: Polynomial, b: Polynomial):
    """Return ``(g, s, t)`` with ``s*a + t*b = g`` and ``g`` monic."""
    r0, r1 = a, b
    s0, s1 = ONE, Polynomial()
    t0, t1 = Polynomial(), ONE
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    inv = 1 / r0.lc
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def squarefree_decomposition(p: Polynomial) -> list[tuple[Polynomial, int]]:
    """Yun's algorithm: ``p = lc * prod(f_k ** k)`` with monic squarefree f_k."""
    if p.degree < 1:
        return []
    out = []
    a = p.monic()
    b = a.derivative()
    c = poly_gcd(a, b)
    w = a // c
    y = b // c
    k = 1
    while w.degree > 0:
        z = y - w.derivative()
        g = poly_gcd(w, z)
        if g.degree > 0:
            out.append((g, k))
        w = w // g
        y = z // g
        k += 1
    return out


def poly_to_str(p: Polynomial, var: str = "z") -> str:
    if p.is_zero():
        return "0"
    terms = []
    for i in range(p.degree, -1, -1):
        c = p.coeffs[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if i == 0:
            body = str(a)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if a == 1 else f"{a}*{mono}"
        terms.append((sign, body))
    first_sign, first = terms[0]
    s = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        s += f" {sign} {body}"
    return s


@dataclass(frozen=True)
class SpherePoint:
    """A point of the Riemann sphere.

    Exact points are projective pairs ``(u : v)`` of rationals normalized to
    ``(x : 1)`` or ``(1 : 0)``.  Approximate points carry a complex centre and
    a radius inside which the true point is known to lie.
    """

    u: Fraction | None = None
    v: Fraction | None = None
    approx: complex | None = None
    radius: float = 0.0

    @classmethod
    def exact(cls, x) -> "SpherePoint":
        return cls(_frac(x), Fraction(1))

    @classmethod
    def projective(cls, u, v) -> "SpherePoint":
        u, v = _frac(u), _frac(v)
        if u == 0 and v == 0:
            raise BothZero("(0 : 0) is not a point")
        if v == 0:
            return cls.infinity()
        return cls(u / v, Fraction(1))

    @classmethod
    def infinity(cls) -> "SpherePoint":
        return cls(Fraction(1), Fraction(0))

    @classmethod
    def numeric(cls, z: complex, radius: float) -> "SpherePoint":
        return cls(approx=complex(z), radius=float(radius))

    @property
    def is_exact(self) -> bool:
        return self.u is not None

    @property
    def is_infinity(self) -> bool:
        return self.is_exact and self.v == 0

    @property
    def value(self) -> Fraction:
        """Finite exact coordinate."""
        if not self.is_exact or self.v == 0:
            raise ValueError(f"{self} has no finite exact coordinate")
        return self.u

    def to_complex(self) -> complex:
        if self.is_exact:
            if self.v == 0:
                return complex("inf")
            return complex(float(self.u))
        return self.approx

    def chordal_distance(self, other: "SpherePoint") -> float:
        return chordal(self.to_complex(), other.to_complex())

    def same_as(self, other: "SpherePoint", tol: float = 0.0) -> bool:
        """Exact comparison when both are exact, else a radius test."""
        if self.is_exact and other.is_exact:
            return self.u * other.v == other.u * self.v
        slack = self.radius + other.radius + tol
        return self.chordal_distance(other) <= max(slack, 1e-9)

    def __str__(self) -> str:
        if self.is_exact:
            return "inf" if self.v == 0 else str(self.u)
        z = self.approx
        return f"~({z.real:.12g}{z.imag:+.12g}j)"


def chordal(a: complex, b: complex) -> float:
    """Chordal distance on the sphere; handles infinity."""
    import cmath

    inf_a = cmath.isinf(a)
    inf_b = cmath.isinf(b)
    if inf_a and inf_b:
        return 0.0
    if inf_a:
        return 2.0 / (1 + abs(b) ** 2) ** 0.5
    if inf_b:
        return 2.0 / (1 + abs(a) ** 2) ** 0.5
    return 2.0 * abs(a - b) / ((1 + abs(a) ** 2) ** 0.5 * (1 + abs(b) ** 2) ** 0.5)


@dataclass(frozen=True, eq=False)
class RationalFunction:
    """Reduced quotient ``num/den`` with monic denominator."""

    num: Polynomial
    den: Polynomial
    _degree: int = field(default=-1, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_degree", max(self.num.degree, self.den.degree, 0))

    # construction
    @classmethod
    def from_polys(cls, num, den=ONE, reduced: bool = False) -> "RationalFunction":
        num, den = _as_poly(num), _as_poly(den)
        if num.is_zero() and den.is_zero():
            raise BothZero("0/0 is not a rational function")
        if den.is_zero():
            raise ZeroDivisionError("denominator is zero")
        if num.is_zero():
            return cls(Polynomial(), ONE)
        if not reduced:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
        inv = 1 / den.lc
        return cls(num.scale(inv), den.scale(inv))

    @classmethod
    def const(cls, c) -> "RationalFunction":
        return cls(Polynomial([c]), ONE)

    @classmethod
    def identity(cls) -> "RationalFunction":
        return cls(Z, ONE)

    @classmethod
    def mobius(cls, a, b, c, d) -> "RationalFunction":
        """(a z + b)/(c z + d)."""
        f = cls.from_polys(Polynomial([b, a]), Polynomial([d, c]))
        if f.degree != 1:
            raise ValueError("singular Mobius transformation")
        return f

    @property
    def degree(self) -> int:
        return self._degree

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    # equality is equality of maps thanks to the canonical form
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RationalFunction.const(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"RationalFunction({self})"

    def __str__(self) -> str:
        if self.is_polynomial():
            return poly_to_str(self.num)
        return f"({poly_to_str(self.num)})/({poly_to_str(self.den)})"

    # field arithmetic
    def __add__(self, other) -> "RationalFunction":
        o = _as_rf(other)
        return RationalFunction.from_polys(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other) -> "RationalFunction":
        return self + (-_as_rf(other))

    def __rsub__(self, other) -> "RationalFunction":
        return _as_rf(other) - self

    def __mul__(self, other) -> "RationalFunction":
        o = _as_rf(other)
        return RationalFunction.from_polys(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalFunction":
        o = _as_rf(other)
        if o.num.is_zero():
            raise ZeroDivisionError("division by the zero function")
        return RationalFunction.from_polys(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other) -> "RationalFunction":
        return _as_rf(other) / self

    def __pow__(self, n: int) -> "RationalFunction":
        if n >= 0:
            return RationalFunction.from_polys(self.num**n, self.den**n, reduced=True)
        return RationalFunction.from_polys(self.den ** (-n), self.num ** (-n), reduced=True)

    # maps
    def compose(self, inner: "RationalFunction") -> "RationalFunction":
        return compose(self, inner)

    def __matmul__(self, inner: "RationalFunction") -> "RationalFunction":
        return compose(self, inner)

    def __call__(self, x):
        """Evaluate at an exact scalar (returns Fraction or None for a pole)."""
        p = evaluate(self, SpherePoint.exact(x))
        return None if p.is_infinity else p.value

    def eval_complex(self, z: complex) -> complex:
        return _peval(self.num, z) / _peval(self.den, z)

    def derivative(self) -> "RationalFunction":
        return derivative(self)

    def reversed_chart(self) -> tuple[Polynomial, Polynomial]:
        """Numerator and denominator of ``f(1/s)`` cleared of powers of s."""
        d = self.degree
        return self.num.reverse(d), self.den.reverse(d)

    def value_at_infinity(self) -> SpherePoint:
        return evaluate(self, SpherePoint.infinity())


def _peval(p: Polynomial, z):
    acc = 0j
    for c in reversed(p.coeffs):
        acc = acc * z + float(c)
    return acc


def _as_rf(x) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, Polynomial):
        return RationalFunction.from_polys(x)
    return RationalFunction.const(x)


def normalize(num: Polynomial, den: Polynomial) -> RationalFunction:
    """Reduced, denominator-monic representative of ``num/den``."""
    return RationalFunction.from_polys(num, den)


def compose(f: RationalFunction, g: RationalFunction) -> RationalFunction:
    """``f o g``.

    The homogenized substitution of coprime pairs stays coprime, so no gcd
    is needed and ``deg(f o g) = deg f * deg g`` for nonconstant maps.
    """
    d = f.degree
    u, v = g.num, g.den
    if d == 0:
        return f
    upow = [ONE]
    vpow = [ONE]
    for _ in range(d):
        upow.append(upow[-1] * u)
        vpow.append(vpow[-1] * v)
    num = Polynomial()
    den = Polynomial()
    for i in range(d + 1):
        mono = upow[i] * vpow[d - i]
        if f.num[i]:
            num = num + mono.scale(f.num[i])
        if f.den[i]:
            den = den + mono.scale(f.den[i])
    if g.degree == 0:
        return RationalFunction.from_polys(num, den)
    return RationalFunction.from_polys(num, den, reduced=True)


def evaluate(f: RationalFunction, p: SpherePoint) -> SpherePoint:
    """Projective evaluation; exact for exact points, numeric otherwise."""
    d = f.degree
    if p.is_exact:
        a = f.num.homogeneous(d, p.u, p.v)
        b = f.den.homogeneous(d, p.u, p.v)
        return SpherePoint.projective(a, b)
    z = p.approx
    den = _peval(f.den, z)
    num = _peval(f.num, z)
    if den == 0:
        return SpherePoint.infinity()
    val = num / den
    # crude first-order radius propagation
    try:
        fp = derivative(f).eval_complex(z)
        rad = abs(fp) * p.radius
    except ZeroDivisionError:
        rad = float("inf")
    return SpherePoint.numeric(val, rad + 1e-15 * (1 + abs(val)))


def derivative(f: RationalFunction) -> RationalFunction:
    num = f.num.derivative() * f.den - f.num * f.den.derivative()
    if num.is_zero():
        return RationalFunction.const(0)
    return RationalFunction.from_polys(num, f.den * f.den)


def equals(f: RationalFunction, g: RationalFunction) -> bool:
    """True iff the maps agree (cross-multiplied identity)."""
    return (f.num * g.den - g.num * f.den).is_zero()


@lru_cache(maxsize=None)
def _chebyshev_poly(n: int) -> Polynomial:
    if n == 0:
        return ONE
    prev, cur = ONE, Z
    for _ in range(n - 1):
        prev, cur = cur, Z * cur * 2 - prev
    return cur


def chebyshev(n: int) -> RationalFunction:
    """T_n with T_n(cos t) = cos(n t)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return RationalFunction(_chebyshev_poly(n), ONE)


def power(n: int) -> RationalFunction:
    """z**n for any integer n."""
    if n >= 0:
        return RationalFunction(Polynomial.monomial(n), ONE)
    return RationalFunction(ONE, Polynomial.monomial(-n))


def joukowski(d: int) -> RationalFunction:
    """H_d = (z**d + z**-d)/2."""
    if d < 1:
        raise ValueError("d must be positive")
    return RationalFunction.from_polys(Polynomial.monomial(2 * d, Fraction(1, 2)) + Fraction(1, 2),
                                       Polynomial.monomial(d))


# ---------------------------------------------------------------------------
# expression parsing
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", num))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    out.append(("end", ""))
    return out


class _Parser:
    def __init__(self, text: str, var: str | None):
        self.toks = _tokenize(text)
        self.i = 0
        self.var = var

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None, val=None):
        tok = self.toks[self.i]
        if (kind and tok[0] != kind) or (val and tok[1] != val):
            raise ParseError(f"expected {val or kind}, got {tok[1] or 'end of input'!r}")
        self.i += 1
        return tok

    def parse(self) -> RationalFunction:
        e = self.expr()
        self.take("end")
        return e

    def expr(self):
        acc = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.unary()
        while True:
            tok = self.peek()
            if tok in (("op", "*"), ("op", "/")):
                self.take()
                rhs = self.unary()
                acc = acc * rhs if tok[1] == "*" else acc / rhs
            elif tok[0] in ("num", "name") or tok == ("op", "("):
                acc = acc * self.unary()  # implicit multiplication: 2z, 3(z+1)
            else:
                return acc

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            neg = False
            if self.peek() == ("op", "-"):
                self.take()
                neg = True
            if self.peek() == ("op", "("):
                self.take()
                if self.peek() == ("op", "-"):
                    self.take()
                    neg = not neg
                exp = int(self.take("num")[1])
                self.take("op", ")")
            else:
                exp = int(self.take("num")[1])
            return base ** (-exp if neg else exp)
        return base

    def atom(self):
        kind, val = self.peek()
        if kind == "num":
            self.take()
            return RationalFunction.const(int(val))
        if kind == "name":
            self.take()
            if self.var is None:
                self.var = val
            if val != self.var:
                raise ParseError(f"unknown symbol {val!r}; expected variable {self.var!r}")
            return RationalFunction.identity()
        if (kind, val) == ("op", "("):
            self.take()
            e = self.expr()
            self.take("op", ")")
            return e
        raise ParseError(f"unexpected token {val or 'end of input'!r}")


def parse(text: str, var: str | None = None) -> RationalFunction:
    """Parse a rational expression in one variable with exact literals.

    Grammar: ``+ - * /``, ``^`` or ``**`` with integer exponents, parentheses,
    integer literals (``1/2`` is parsed as a quotient), implicit
    multiplication (``2z``).  The first identifier seen is the variable.
    """
    try:
        return _Parser(text, var).parse()
    except ZeroDivisionError as exc:
        raise ParseError(f"division by zero in {text!r}") from exc


# ---------------------------------------------------------------------------
# JSON encoding
# ---------------------------------------------------------------------------

def _enc_scalar(c: Fraction) -> str:
    return str(c)


def rf_to_json(f: RationalFunction) -> dict:
    num = [_enc_scalar(c) for c in f.num.coeffs] or ["0"]
    return {"expr": str(f), "num": num, "den": [_enc_scalar(c) for c in f.den.coeffs]}


def rf_from_json(obj) -> RationalFunction:
    """Decode ``{"num": [...], "den": [...]}`` or an expression string."""
    if isinstance(obj, str):
        return parse(obj)
    try:
        num = Polynomial(obj["num"])
        den = Polynomial(obj.get("den", ["1"]))
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational function encoding: {obj!r}") from exc
    return RationalFunction.from_polys(num, den)


def point_to_json(p: SpherePoint):
    if p.is_exact:
        return str(p)
    return {"re": p.approx.real, "im": p.approx.imag, "radius": p.radius}


def point_from_json(obj) -> SpherePoint:
    if isinstance(obj, str):
        if obj.strip().lower() in ("inf", "infinity", "oo"):
            return SpherePoint.infinity()
        return SpherePoint.exact(Fraction(obj))
    if isinstance(obj, int):
        return SpherePoint.exact(obj)
    try:
        return SpherePoint.numeric(complex(obj["re"], obj["im"]), obj.get("radius", 0.0))
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad point encoding: {obj!r}") from exc


def rf_sequence(fs: Sequence[RationalFunction]) -> list[dict]:
    return [rf_to_json(f) for f in fs]
