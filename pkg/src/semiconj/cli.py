"""Command-line front end with JSON output.

Every command prints one JSON document on standard output with a top-level
``"schema"`` field.  Exit codes: 0 when the requested checks pass, 1 when a
check fails, 2 on input errors (an ``{"schema": "semiconj.error/1", ...}``
object is printed in that case).
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .decomposition import (
    common_right_factor,
    decompositions,
    left_factor_witness,
    mobius_witness,
)
from .errors import (
    BadParameters,
    DegreeMismatch,
    ParseError,
    SemiconjError,
    SingularCurve,
    TranscriptionInvalid,
    Unsupported,
)
from .generators import (
    LattesConfig,
    gen_chebyshev_family,
    gen_degenerate,
    gen_lattes,
    gen_lattes_triple,
    gen_paper_example,
    gen_power_family,
    theta_universal_cover,
)
from .monodromy import ContinuationConfig, fiber_product, joint_fiber_degree, monodromy_constellation
from .orbifold import MapType, Signature, check_map_type, classify_signature, euler_char
from .ramification import DEFAULT_MAX_BITS, Orbifold, orbifold_pair, ramification_portrait
from .ratfun import RationalFunction, rf_from_json, rf_to_json
from .verify import verify_quadruple, verify_semiconjugacy

PRECISION_ENV = "SEMICONJ_PRECISION_BITS"
SCHEMA_VERSION = 1

log = logging.getLogger("semiconj")


class InputError(SemiconjError):
    """Bad command-line input."""


INPUT_ERRORS = (InputError, ParseError, BadParameters, DegreeMismatch, SingularCurve,
                TranscriptionInvalid, Unsupported)


def _schema(name: str) -> str:
    return f"semiconj.{name}/{SCHEMA_VERSION}"


def _default_bits() -> int:
    raw = os.environ.get(PRECISION_ENV)
    if not raw:
        return DEFAULT_MAX_BITS
    try:
        bits = int(raw)
    except ValueError:
        raise InputError(f"{PRECISION_ENV}={raw!r} is not an integer") from None
    if bits < 64:
        raise InputError(f"{PRECISION_ENV} must be at least 64")
    return bits


def _load_json(text: str):
    """Inline JSON, or the contents of the file it names."""
    path = Path(text)
    if not text.lstrip().startswith(("{", "[", '"')) and path.exists():
        text = path.read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from None


def _rf(value) -> RationalFunction:
    if isinstance(value, dict) and "num" not in value and "expr" in value:
        value = value["expr"]
    return rf_from_json(value)


def _record(obj: dict, names: tuple[str, ...]) -> list[RationalFunction]:
    """Pick named maps from a JSON record, e.g. the output of ``generate``."""
    if "triple" in obj and isinstance(obj["triple"], dict):
        obj = obj["triple"]
    missing = [n for n in names if n not in obj]
    if missing:
        raise InputError(f"record lacks {', '.join(missing)}")
    return [_rf(obj[n]) for n in names]


def _maps(args, record_attr: str, names: tuple[str, ...]) -> list[RationalFunction]:
    record = getattr(args, record_attr)
    if record is not None:
        return _record(_load_json(record), names)
    values = [getattr(args, n) for n in names]
    if any(v is None for v in values):
        raise InputError(f"give --{record_attr} or all of " + ", ".join(f"--{n}" for n in names))
    return [_rf(v) for v in values]


def _config(args) -> ContinuationConfig:
    return ContinuationConfig(max_bits=args.precision_bits, base_index=args.base_index)


# ---------------------------------------------------------------------------
# commands; each returns (exit status, payload)


def cmd_verify(args):
    A, X, B = _maps(args, "triple", ("A", "X", "B"))
    rep = verify_semiconjugacy(A, X, B, _config(args), args.precision_bits)
    out = {"schema": _schema("verify"), "triple": {"A": rf_to_json(A), "X": rf_to_json(X), "B": rf_to_json(B)},
           "report": rep.to_json(), "passed": rep.passed}
    return (0 if rep.passed else 1), out


def cmd_verify4(args):
    A, C, D, B = _maps(args, "quadruple", ("A", "C", "D", "B"))
    rep = verify_quadruple(A, C, D, B, _config(args))
    checks_ok = all(MapType.from_label(v).is_quasi_covering() for v in rep.quasi_covering_checks.values())
    passed = rep.identity_ok and (not rep.good or checks_ok)
    out = {"schema": _schema("verify4"),
           "quadruple": {k: rf_to_json(f) for k, f in zip("ACDB", (A, C, D, B))},
           "report": rep.to_json(), "passed": passed}
    return (0 if passed else 1), out



def _orbifold_entry(o: Orbifold) -> dict:
    return {"signature": str(classify_signature(o)), "chi": str(euler_char(o)), **o.to_json()}


def cmd_analyze(args):
    (f,) = _maps(args, "record", ("f",))
    portrait = ramification_portrait(f, args.precision_bits)
    out = {"schema": _schema("analyze"), "f": rf_to_json(f), "portrait": portrait.to_json(),
           "ramification_sum": portrait.ramification_sum()}
    if f.degree >= 2:
        o1, o2 = orbifold_pair(f, portrait)
        out["O1"] = _orbifold_entry(o1)
        out["O2"] = _orbifold_entry(o2)
        out["self_map_type"] = {"O1->O2": check_map_type(f, o1, o2, portrait).label}
    return 0, out


def cmd_monodromy(args):
    (f,) = _maps(args, "record", ("f",))
    c = monodromy_constellation(f, _config(args))
    return 0, {"schema": _schema("monodromy"), "f": rf_to_json(f), "constellation": c.to_json()}


def cmd_fiberproduct(args):
    f, g = _maps(args, "record", ("f", "g"))
    fp = fiber_product(f, g, _config(args))
    out = {"schema": _schema("fiberproduct"), "f": rf_to_json(f), "g": rf_to_json(g),
           "irreducible": len(fp.components) == 1, **fp.to_json()}
    return 0, out


def cmd_decompose(args):
    out: dict = {"schema": _schema("decompose")}
    if args.h is not None:
        h = _rf(args.h)
        out["h"] = rf_to_json(h)
        if args.left is not None:
            f = _rf(args.left)
            w = left_factor_witness(f, h)
            out["left"] = rf_to_json(f)
            out["right_factor"] = None if w is None else rf_to_json(w)
            return 0, out
        degrees = [args.left_degree] if args.left_degree else [
            k for k in range(2, h.degree) if h.degree % k == 0
        ]
        items = []
        for k in degrees:
            for d in decompositions(h, k):
                item = {"left": rf_to_json(d.left), "right": rf_to_json(d.right)}
                if args.family:
                    # H_m has degree 2m; the other normal forms have degree m
                    m = d.left.degree // 2 if args.family == "joukowski" else d.left.degree
                    wit = mobius_witness(d.left, args.family, m) if m >= 1 else None
                    item["mobius_witness"] = None if wit is None else wit.to_json()
                items.append(item)
        out["decompositions"] = items
        return 0, out
    if args.x is None or args.b is None:
        raise InputError("decompose needs --x and --b, or --h")
    x, b = _rf(args.x), _rf(args.b)
    wit = common_right_factor(x, b)
    block = joint_fiber_degree(x, b)
    out.update({"x": rf_to_json(x), "b": rf_to_json(b), "primitive": wit is None,
                "witness": None if wit is None else wit.to_json(), "block_size": block,
                "blocks_without_rational_witness": wit is None and block > 1})
    if wit is not None and wit.factor.degree != block:
        log.warning("exact factor degree %d but numeric block size %d", wit.factor.degree, block)
    return 0, out


def cmd_generate(args):
    kind = args.kind
    if kind == "power":
        t = gen_power_family(args.r, _rf(args.R), args.n, args.m)
    elif kind == "chebyshev":
        t = gen_chebyshev_family(args.m, args.d, args.variant)
    elif kind == "paper":
        t = gen_paper_example(args.which)
    elif kind == "lattes":
        if args.m is not None:
            f = gen_lattes(LattesConfig(Fraction(args.g2), Fraction(args.g3), args.m))
            return 0, {"schema": _schema("map"), "f": rf_to_json(f), "provenance": "lattes",
                       "params": {"g2": str(Fraction(args.g2)), "g3": str(Fraction(args.g3)), "m": str(args.m)}}
        t = gen_lattes_triple(Fraction(args.g2), Fraction(args.g3))
    elif kind == "theta":
        theta = theta_universal_cover(args.signature)
        return 0, {"schema": _schema("map"), "f": rf_to_json(theta), "provenance": "theta",
                   "params": {"signature": str(Signature.parse(args.signature))}}
    elif kind == "degenerate":
        t = gen_degenerate(args.s, _rf(args.R), args.n)
    else:  # pragma: no cover - argparse restricts the choices
        raise InputError(f"unknown generator {kind!r}")
    return 0, {"schema": _schema("triple"), **t.to_json()}


def cmd_classify(args):
    if args.f is not None:
        o1, o2 = orbifold_pair(_rf(args.f))
        return 0, {"schema": _schema("classify"), "O1": _orbifold_entry(o1), "O2": _orbifold_entry(o2)}
    if args.signature is None:
        raise InputError("classify needs --signature or --f")
    sig = Signature.parse(args.signature)
    return 0, {"schema": _schema("classify"), "signature": str(sig), "tag": sig.tag.value,
               "chi": str(sig.chi), "indices": list(sig.indices)}


COMMANDS = {
    "verify": cmd_verify,
    "verify4": cmd_verify4,
    "analyze": cmd_analyze,
    "monodromy": cmd_monodromy,
    "fiberproduct": cmd_fiberproduct,
    "decompose": cmd_decompose,
    "generate": cmd_generate,
    "classify": cmd_classify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision-bits", type=int, default=None,
                        help=f"cap of the numeric precision ladder (default ${PRECISION_ENV} or {DEFAULT_MAX_BITS})")
    common.add_argument("--seed", type=int, default=None, help="reserved; all paths are deterministic")
    common.add_argument("--format", choices=["json"], default="json")
    common.add_argument("--base-index", type=int, default=0,
                        help="use the k-th admissible base point for monodromy")
    common.add_argument("-v", "--verbose", action="store_true", help="log progress to standard error")

    p = argparse.ArgumentParser(prog="semiconj", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"semiconj {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", parents=[common], help="verify A o X = X o B and classify it")
    s.add_argument("--triple", help="JSON record (file or inline) with keys A, X, B")
    for n in ("A", "X", "B"):
        s.add_argument(f"--{n}", dest=n, help="inline expression")

    s = sub.add_parser("verify4", parents=[common], help="verify A o C = D o B")
    s.add_argument("--quadruple", help="JSON record (file or inline) with keys A, C, D, B")
    for n in ("A", "C", "D", "B"):
        s.add_argument(f"--{n}", dest=n, help="inline expression")

    for name, help_ in (("analyze", "ramification portrait and induced orbifolds"),
                        ("monodromy", "monodromy constellation")):
        s = sub.add_parser(name, parents=[common], help=help_)
        s.add_argument("--f", help="inline expression")
        s.add_argument("--record", help="JSON record with key f")

    s = sub.add_parser("fiberproduct", parents=[common], help="components of f(x) = g(y)")
    s.add_argument("--f")
    s.add_argument("--g")
    s.add_argument("--record", help="JSON record with keys f, g")

    s = sub.add_parser("decompose", parents=[common], help="common right factors and decompositions")
    s.add_argument("--x", help="first map of a pair")
    s.add_argument("--b", help="second map of a pair")
    s.add_argument("--h", help="map to decompose")
    s.add_argument("--left", help="with --h: find w with h = left o w")
    s.add_argument("--left-degree", type=int, help="with --h: degree of the left factor")
    s.add_argument("--family", choices=["power", "chebyshev", "joukowski"],
                   help="with --h: attach a Mobius witness for each left factor")

    s = sub.add_parser("generate", parents=[common], help="explicit solutions")
    gen = s.add_subparsers(dest="kind", required=True)
    g = gen.add_parser("power", parents=[common])
    g.add_argument("--r", type=int, required=True)
    g.add_argument("--R", required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--m", type=int, required=True)
    g = gen.add_parser("chebyshev", parents=[common])
    g.add_argument("--m", type=int, required=True)
    g.add_argument("--d", type=int, required=True)
    g.add_argument("--variant", choices=["TT", "TH", "tt", "th"], default="TT")
    g = gen.add_parser("paper", parents=[common])
    g.add_argument("--which", choices=["dihedral_n2", "tetrahedral"], required=True)
    g = gen.add_parser("lattes", parents=[common])
    g.add_argument("--g2", required=True)
    g.add_argument("--g3", required=True)
    g.add_argument("--m", type=int, help="emit the single map f_m instead of the (f_2, f_3, f_2) triple")
    g = gen.add_parser("theta", parents=[common])
    g.add_argument("--signature", required=True, help='e.g. "(2,2,5)"')
    g = gen.add_parser("degenerate", parents=[common])
    g.add_argument("--s", type=int, required=True)
    g.add_argument("--R", required=True)
    g.add_argument("--n", type=int, required=True)

    s = sub.add_parser("classify", parents=[common], help="classify a signature or the orbifolds of a map")
    s.add_argument("--signature", help='e.g. "2,3,5" or "(2,3,5)"')
    s.add_argument("--f", help="classify the orbifolds induced by f")
    return p


def _emit(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def _fail(exc: Exception, status: int) -> int:
    log.error("%s", exc)
    _emit({"schema": _schema("error"), "error": {"type": type(exc).__name__, "message": str(exc)}})
    return status


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        if exc.code:
            _emit({"schema": _schema("error"), "error": {"type": "UsageError", "message": "invalid arguments"}})
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.precision_bits is None:
            args.precision_bits = _default_bits()
        elif args.precision_bits < 64:
            raise InputError("--precision-bits must be at least 64")
        status, payload = COMMANDS[args.command](args)
    except (ValueError, *INPUT_ERRORS) as exc:
        return _fail(exc, 2)
    except SemiconjError as exc:
        # the input was fine but a computation could not be completed or certified
        return _fail(exc, 1)
    _emit(payload)
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
