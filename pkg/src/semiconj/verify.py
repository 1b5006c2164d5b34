"""End-to-end checks of candidate solutions.

``verify_semiconjugacy`` runs, in order and failing fast on the exact
identity: identity, degrees, primitivity, goodness, induced orbifolds and
their class, and the two quasi-covering checks that every primitive solution
must pass.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .decomposition import common_right_factor, is_primitive_pair
from .errors import ClusterAmbiguity, ContinuationFailure, IdentityMismatch, InternalInconsistency
from .monodromy import ContinuationConfig, fiber_product, goodness_report
from .orbifold import MapType, check_map_type, classify_signature, euler_char
from .ramification import DEFAULT_MAX_BITS, Orbifold, orbifold_pair, ramification_portrait
from .ratfun import RationalFunction, compose, equals

SPHERICAL = "Spherical"
EUCLIDEAN = "Euclidean"
INCONCLUSIVE = "Inconclusive"


def _orbifold_json(o: Orbifold) -> dict:
    sig = classify_signature(o)
    return {"signature": str(sig), "chi": str(euler_char(o)), **o.to_json()}


@dataclass
class SemiconjugacyReport:
    identity_ok: bool
    degrees: tuple[int, int, int]
    primitive: bool | None = None
    good: bool | None = None
    orbifold_class: str = INCONCLUSIVE
    quasi_covering_checks: dict[str, str] = field(default_factory=dict)
    orbifolds: dict[str, dict] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.orbifold_class != INCONCLUSIVE and not self.identity_ok:
            raise InternalInconsistency("a class was assigned to a non-solution")

    @property
    def quasi_covering_ok(self) -> bool:
        return bool(self.quasi_covering_checks) and all(
            MapType.from_label(v).is_quasi_covering() for v in self.quasi_covering_checks.values()
        )

    @property
    def passed(self) -> bool:
        """Identity holds and, for a primitive triple, the class and both map checks are as required."""
        if not self.identity_ok:
            return False
        if self.primitive:
            return self.orbifold_class in (SPHERICAL, EUCLIDEAN) and self.quasi_covering_ok
        return True

    def to_json(self) -> dict:
        return {
            "identity_ok": self.identity_ok,
            "degrees": list(self.degrees),
            "primitive": self.primitive,
            "good": self.good,
            "orbifold_class": self.orbifold_class,
            "quasi_covering_checks": dict(sorted(self.quasi_covering_checks.items())),
            "orbifolds": self.orbifolds,
            "notes": list(self.notes),
        }



def _classify(o1: Orbifold, o2: Orbifold) -> tuple[str, str | None]:
    c1, c2 = euler_char(o1), euler_char(o2)
    if c1 > 0 and c2 > 0:
        return SPHERICAL, None
    if c1 == 0 and c2 == 0:
        return EUCLIDEAN, None
    return INCONCLUSIVE, f"chi(O_1) = {c1}, chi(O_2) = {c2}: hyperbolic orbifolds"


def verify_semiconjugacy(A: RationalFunction, X: RationalFunction, B: RationalFunction,
                         config: ContinuationConfig | None = None,
                         max_bits: int = DEFAULT_MAX_BITS) -> SemiconjugacyReport:
    degrees = (A.degree, X.degree, B.degree)
    if not equals(compose(A, X), compose(X, B)):
        return SemiconjugacyReport(False, degrees, notes=["A o X != X o B"])
    rep = SemiconjugacyReport(True, degrees)
    if min(degrees) < 2:
        rep.notes.append("some degree is at most one; the classification does not apply")
        rep.primitive = is_primitive_pair(X, B)
        return rep
    rep.primitive = is_primitive_pair(X, B)
    try:
        rep.good = goodness_report(X, B, A, X, config).good
    except ContinuationFailure as exc:
        rep.notes.append(f"goodness not decided: {exc}")
    try:
        portrait = ramification_portrait(X, max_bits)
        o1, o2 = orbifold_pair(X, portrait)
        rep.orbifolds = {"O1": _orbifold_json(o1), "O2": _orbifold_json(o2)}
        cls, note = _classify(o1, o2)
        if note:
            rep.notes.append(note)
        rep.quasi_covering_checks = {
            "A": check_map_type(A, o2, o2).label,
            "B": check_map_type(B, o1, o1).label,
        }
    except ClusterAmbiguity as exc:
        rep.notes.append(f"numeric clusters ambiguous: {exc}")
        return rep
    rep.orbifold_class = cls
    if rep.primitive and rep.good is False:
        rep.notes.append("primitive solution reported not good; numerics suspect")
    if rep.primitive and not rep.quasi_covering_ok:
        rep.notes.append("primitive solution fails a quasi-covering check")
    return rep


@dataclass
class QuadrupleReport:
    identity_ok: bool
    degrees: tuple[int, int, int, int]
    irreducible: bool | None = None
    no_common_right_factor: bool | None = None
    good: bool | None = None
    component_degrees: tuple[int, ...] = ()
    orbifolds: dict[str, dict] = field(default_factory=dict)
    quasi_covering_checks: dict[str, str] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "identity_ok": self.identity_ok,
            "degrees": list(self.degrees),
            "irreducible": self.irreducible,
            "no_common_right_factor": self.no_common_right_factor,
            "good": self.good,
            "component_degrees": list(self.component_degrees),
            "orbifolds": self.orbifolds,
            "quasi_covering_checks": dict(sorted(self.quasi_covering_checks.items())),
            "notes": list(self.notes),
        }


def verify_quadruple(A: RationalFunction, C: RationalFunction, D: RationalFunction, B: RationalFunction,
                     config: ContinuationConfig | None = None) -> QuadrupleReport:
    """Checks on ``A o C = D o B``.

    Good means the curve A(x) = D(y) is irreducible and C, B have no common
    right factor.  For good solutions, D: O_2^B -> O_2^A and C: O_1^B -> O_1^A
    must be quasi-covering maps.
    """
    degrees = (A.degree, C.degree, D.degree, B.degree)
    if not equals(compose(A, C), compose(D, B)):
        return QuadrupleReport(False, degrees, notes=["A o C != D o B"])
    rep = QuadrupleReport(True, degrees)
    if min(degrees) < 1:
        rep.notes.append("constant map")
        return rep
    fp = fiber_product(A, D, config)
    rep.component_degrees = fp.degrees
    rep.irreducible = len(fp.components) == 1
    rep.no_common_right_factor = C.degree == 1 or B.degree == 1 or common_right_factor(C, B) is None
    rep.good = rep.irreducible and rep.no_common_right_factor
    pairs = {}
    try:
        for name, f in (("A", A), ("B", B), ("C", C), ("D", D)):
            if f.degree >= 2:
                pairs[name] = orbifold_pair(f)
                rep.orbifolds[f"O1^{name}"] = _orbifold_json(pairs[name][0])
                rep.orbifolds[f"O2^{name}"] = _orbifold_json(pairs[name][1])
        if "A" in pairs and "B" in pairs:
            o1a, o2a = pairs["A"]
            o1b, o2b = pairs["B"]
            rep.quasi_covering_checks = {
                "D": check_map_type(D, o2b, o2a).label,
                "C": check_map_type(C, o1b, o1a).label,
            }
            if rep.good and not all(MapType.from_label(v).is_quasi_covering()
                                    for v in rep.quasi_covering_checks.values()):
                rep.notes.append("good solution fails a quasi-covering check")
    except ClusterAmbiguity as exc:
        rep.notes.append(f"numeric clusters ambiguous: {exc}")
    return rep


def check_theta_goodness(theta: RationalFunction, f: RationalFunction, tau: RationalFunction,
                         config: ContinuationConfig | None = None) -> bool:
    """Is ``theta o tau = f o theta`` a good solution?

    For a holomorphic self-map f of the spherical orbifold O_2^theta this is
    equivalent to f being quasi-covering; both are computed and must agree.
    """
    if not equals(compose(theta, tau), compose(f, theta)):
        raise IdentityMismatch("theta o tau != f o theta")
    good = goodness_report(f, theta, theta, tau, config).good
    o2 = orbifold_pair(theta)[1]
    mt = check_map_type(f, o2, o2)
    if euler_char(o2) > 0 and mt.is_holomorphic() and mt.is_quasi_covering() != good:
        raise InternalInconsistency(
            f"goodness {good} disagrees with map type {mt.label} on O_2^theta"
        )
    return good


def chi_values(o1: Orbifold, o2: Orbifold) -> tuple[Fraction, Fraction]:
    return euler_char(o1), euler_char(o2)
