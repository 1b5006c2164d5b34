"""Semiconjugate rational functions: exact arithmetic, ramification, orbifolds,
monodromy, decompositions and verification of ``A o X = X o B``."""
from .errors import SemiconjError
from .ratfun import (
    Polynomial,
    RationalFunction,
    SpherePoint,
    chebyshev,
    compose,
    equals,
    evaluate,
    joukowski,
    parse,
    power,
)
from .ramification import Orbifold, orbifold_pair, ramification_portrait
from .orbifold import MapType, Signature, check_map_type, classify_signature, euler_char
from .monodromy import fiber_product, goodness_report, monodromy_constellation
from .decomposition import common_right_factor, left_factor_witness, mobius_witness
from .verify import verify_quadruple, verify_semiconjugacy

__version__ = "0.1.0"

__all__ = [
    "SemiconjError",
    "Polynomial",
    "RationalFunction",
    "SpherePoint",
    "chebyshev",
    "compose",
    "equals",
    "evaluate",
    "joukowski",
    "parse",
    "power",
    "Orbifold",
    "orbifold_pair",
    "ramification_portrait",
    "MapType",
    "Signature",
    "check_map_type",
    "classify_signature",
    "euler_char",
    "fiber_product",
    "goodness_report",
    "monodromy_constellation",
    "common_right_factor",
    "left_factor_witness",
    "mobius_witness",
    "verify_quadruple",
    "verify_semiconjugacy",
]
