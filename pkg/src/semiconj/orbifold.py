"""Euler characteristics, signatures, and map types between orbifolds."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import NotHolomorphicMap
from .ramification import (
    Orbifold,
    RamificationPortrait,
    fiber,
    local_degree,
    ramification_portrait,
)
from .ratfun import RationalFunction, SpherePoint, evaluate


def euler_char(o: Orbifold | tuple[int, ...] | list[int]) -> Fraction:
    """``2 + sum(1/nu - 1)`` over the ramified points of a spherical orbifold."""
    indices = o.indices if isinstance(o, Orbifold) else tuple(o)
    return Fraction(2) + sum((Fraction(1, nu) - 1 for nu in indices), Fraction(0))


class Tag(str, enum.Enum):
    UNRAMIFIED = "unramified"
    BAD = "bad"
    CYCLIC = "cyclic"
    DIHEDRAL = "dihedral"
    TETRAHEDRAL = "tetrahedral"
    OCTAHEDRAL = "octahedral"
    ICOSAHEDRAL = "icosahedral"
    EUCLID_2222 = "euclidean-2222"
    EUCLID_333 = "euclidean-333"
    EUCLID_244 = "euclidean-244"
    EUCLID_236 = "euclidean-236"
    HYPERBOLIC = "hyperbolic"


SPHERICAL_TAGS = frozenset(
    {Tag.UNRAMIFIED, Tag.BAD, Tag.CYCLIC, Tag.DIHEDRAL, Tag.TETRAHEDRAL, Tag.OCTAHEDRAL, Tag.ICOSAHEDRAL}
)
EUCLIDEAN_TAGS = frozenset({Tag.EUCLID_2222, Tag.EUCLID_333, Tag.EUCLID_244, Tag.EUCLID_236})

_TRIPLES = {
    (2, 3, 3): Tag.TETRAHEDRAL,
    (2, 3, 4): Tag.OCTAHEDRAL,
    (2, 3, 5): Tag.ICOSAHEDRAL,
    (3, 3, 3): Tag.EUCLID_333,
    (2, 4, 4): Tag.EUCLID_244,
    (2, 3, 6): Tag.EUCLID_236,
}


@dataclass(frozen=True)
class Signature:
    indices: tuple[int, ...]
    tag: Tag

    @property
    def chi(self) -> Fraction:
        return euler_char(self.indices)

    @property
    def has_universal_cover(self) -> bool:
        return self.tag is not Tag.BAD

    def __str__(self) -> str:
        return f"({','.join(map(str, self.indices))}):{self.tag.value}"

    @classmethod
    def parse(cls, text: str) -> "Signature":
        body = text.split(":")[0].strip().strip("()")
        indices = tuple(int(x) for x in body.split(",") if x.strip())
        return classify_indices(indices)


def classify_indices(indices) -> Signature:
    idx = tuple(sorted(int(i) for i in indices if i > 1))
    if not idx:
        tag = Tag.UNRAMIFIED
    elif len(idx) == 1:
        tag = Tag.BAD
    elif len(idx) == 2:
        tag = Tag.CYCLIC if idx[0] == idx[1] else Tag.BAD
    elif len(idx) == 3 and idx[:2] == (2, 2):
        tag = Tag.DIHEDRAL
    elif idx in _TRIPLES:
        tag = _TRIPLES[idx]
    elif idx == (2, 2, 2, 2):
        tag = Tag.EUCLID_2222
    else:
        tag = Tag.HYPERBOLIC
    return Signature(idx, tag)


def classify_signature(o: Orbifold) -> Signature:
    return classify_indices(o.indices)


class MapType(enum.IntEnum):
    """Strongest satisfied condition; larger is stronger."""

    NOT_HOLOMORPHIC = 0
    HOLOMORPHIC_ONLY = 1
    QUASI_COVERING_ONLY = 2
    COVERING = 3

    @property
    def label(self) -> str:
        return {
            MapType.NOT_HOLOMORPHIC: "NotHolomorphic",
            MapType.HOLOMORPHIC_ONLY: "HolomorphicOnly",
            MapType.QUASI_COVERING_ONLY: "QuasiCoveringOnly",
            MapType.COVERING: "Covering",
        }[self]

    @classmethod
    def from_label(cls, label: str) -> "MapType":
        for m in cls:
            if m.label == label:
                return m
        raise ValueError(f"unknown map type label {label!r}")

    def is_quasi_covering(self) -> bool:
        return self >= MapType.QUASI_COVERING_ONLY

    def is_holomorphic(self) -> bool:
        return self >= MapType.HOLOMORPHIC_ONLY


@dataclass(frozen=True)
class PointCheck:
    point: SpherePoint
    nu1: int
    local_degree: int
    nu2: int

    @property
    def covering(self) -> bool:
        return self.nu2 == self.nu1 * self.local_degree

    @property
    def quasi_covering(self) -> bool:
        return self.nu2 == self.nu1 * math.gcd(self.local_degree, self.nu2)

    @property
    def holomorphic(self) -> bool:
        return (self.nu1 * self.local_degree) % self.nu2 == 0

    @property
    def map_type(self) -> MapType:
        if self.covering:
            return MapType.COVERING
        if self.quasi_covering:
            return MapType.QUASI_COVERING_ONLY
        if self.holomorphic:
            return MapType.HOLOMORPHIC_ONLY
        return MapType.NOT_HOLOMORPHIC


def map_type_audit(f: RationalFunction, o1: Orbifold, o2: Orbifold,
                   portrait: RamificationPortrait | None = None) -> list[PointCheck]:
    """Pointwise data on the finite support where any condition can fail.

    The support is: ramified points of ``o1``, preimages of ramified points of
    ``o2``, and critical points of ``f``; elsewhere nu1 = nu2 = deg = 1.
    """
    if f.degree < 1:
        raise ValueError("constant map")
    portrait = portrait or ramification_portrait(f)
    checks: list[PointCheck] = []
    seen: list[SpherePoint] = []

    def add(z: SpherePoint, e: int, image: SpherePoint):
        if any(z.same_as(s) for s in seen):
            return
        seen.append(z)
        checks.append(PointCheck(z, o1.nu(z), e, o2.nu(image)))

    for b in portrait.branches:
        for p in b.points:
            add(p.location, p.local_degree, b.value)
    for p, _ in o2.points:
        for fp in fiber(f, p, portrait):
            add(fp.location, fp.local_degree, p)
    for s, _ in o1.points:
        add(s, local_degree(f, s, portrait), evaluate(f, s))
    return checks


def check_map_type(f: RationalFunction, o1: Orbifold, o2: Orbifold,
                   portrait: RamificationPortrait | None = None) -> MapType:
    checks = map_type_audit(f, o1, o2, portrait)
    return min((c.map_type for c in checks), default=MapType.COVERING)


def riemann_hurwitz_defect(f: RationalFunction, o1: Orbifold, o2: Orbifold,
                           portrait: RamificationPortrait | None = None) -> Fraction:
    """``chi(O_2) deg f - chi(O_1)``; nonnegative, zero exactly for coverings."""
    if not check_map_type(f, o1, o2, portrait).is_holomorphic():
        raise NotHolomorphicMap("f is not a holomorphic map between the given orbifolds")
    return euler_char(o2) * f.degree - euler_char(o1)


def pushforward(mu: RationalFunction, o: Orbifold) -> Orbifold:
    """Image of an orbifold under a Mobius transformation."""
    if mu.degree != 1:
        raise ValueError("pushforward is defined for degree-1 maps")
    return Orbifold.from_pairs((evaluate(mu, p), nu) for p, nu in o.points)
