import json
import subprocess
import sys

import pytest

from semiconj.cli import main
from semiconj.monodromy import Constellation
from semiconj.ramification import Orbifold, RamificationPortrait
from semiconj.ratfun import parse, rf_from_json


def run(capsys, *argv):
    status = main(list(argv))
    out = capsys.readouterr().out
    return status, json.loads(out)


DIHEDRAL_ARGS = ("--A", "(64z^3-64z^2-23z+24)/(4z-5)^2", "--X", "(z^2+1/z^2)/2", "--B", "(z^2-2)/(z-2z^3)")


class TestVerify:
    def test_dihedral(self, capsys):
        status, out = run(capsys, "verify", *DIHEDRAL_ARGS)
        assert status == 0
        assert out["schema"] == "semiconj.verify/1"
        assert out["report"]["orbifold_class"] == "Spherical"
        assert out["passed"] is True

    def test_identity_fails(self, capsys):
        status, out = run(capsys, "verify", "--A", "z^2", "--X", "z^2", "--B", "z^3")
        assert status == 1
        assert out["report"]["identity_ok"] is False

    def test_parse_error(self, capsys):
        status, out = run(capsys, "verify", "--A", "z^2+", "--X", "z^2", "--B", "z^3")
        assert status == 2
        assert out["schema"] == "semiconj.error/1"
        assert out["error"]["type"] == "ParseError"

    def test_missing_maps(self, capsys):
        status, out = run(capsys, "verify", "--A", "z^2")
        assert status == 2 and out["error"]["type"] == "InputError"

    def test_usage_error(self, capsys):
        status, out = run(capsys, "frobnicate")
        assert status == 2 and out["error"]["type"] == "UsageError"

    def test_quadruple(self, capsys):
        status, out = run(capsys, "verify4", "--A", "z^2", "--C", "z^3", "--D", "z^3", "--B", "z^2")
        assert status == 0 and out["report"]["good"] is True

    def test_precision_env(self, capsys, monkeypatch):
        monkeypatch.setenv("SEMICONJ_PRECISION_BITS", "12")
        status, out = run(capsys, "analyze", "--f", "z^2")
        assert status == 2 and "SEMICONJ_PRECISION_BITS" in out["error"]["message"]


class TestRoundTrips:
    def test_generate_then_verify(self, capsys, tmp_path):
        status, gen = run(capsys, "generate", "paper", "--which", "tetrahedral")
        assert status == 0 and gen["schema"] == "semiconj.triple/1"
        path = tmp_path / "triple.json"
        path.write_text(json.dumps(gen))
        status, out = run(capsys, "verify", "--triple", str(path))
        assert status == 0 and out["report"]["orbifold_class"] == "Spherical"

    def test_inline_record(self, capsys):
        _, gen = run(capsys, "generate", "chebyshev", "--m", "3", "--d", "2", "--variant", "TH")
        status, out = run(capsys, "verify", "--triple", json.dumps(gen))
        assert status == 0 and out["passed"]

    def test_lattes_triple(self, capsys):
        _, gen = run(capsys, "generate", "lattes", "--g2", "4", "--g3", "0")
        status, out = run(capsys, "verify", "--triple", json.dumps(gen))
        assert status == 0 and out["report"]["orbifold_class"] == "Euclidean"

    def test_monodromy(self, capsys):
        status, out = run(capsys, "monodromy", "--f", "4z^3-3z")
        assert status == 0
        c = Constellation.from_json(out["constellation"])
        assert c.product().is_identity()
        assert sorted(p.cycle_type() for p in c.perms) == [(2, 1), (2, 1), (3,)]

    def test_analyze(self, capsys):
        status, out = run(capsys, "analyze", "--f", "(z^2+1/z^2)/2")
        assert status == 0
        p = RamificationPortrait.from_json(out["portrait"])
        assert p.ramification_sum() == 6
        assert Orbifold.from_json(out["O2"]).indices == (2, 2, 2)
        assert rf_from_json(out["f"]) == parse("(z^4+1)/(2z^2)")

    def test_fiberproduct(self, capsys):
        status, out = run(capsys, "fiberproduct", "--f", "z^2", "--g", "z^2")
        assert status == 0
        assert [c["degree"] for c in out["components"]] == [2, 2]
        assert out["irreducible"] is False

    def test_decompose_pair(self, capsys):
        _, out = run(capsys, "decompose", "--x", "z^4", "--b", "z^6")
        assert out["primitive"] is False and out["witness"]["degree"] == 2
        assert out["block_size"] == 2 and out["blocks_without_rational_witness"] is False

    def test_decompose_primitive_pair(self, capsys):
        _, out = run(capsys, "decompose", "--x", "z^2", "--b", "z^3")
        assert out["primitive"] is True and out["block_size"] == 1

    def test_decompose_with_witness(self, capsys):
        _, out = run(capsys, "decompose", "--h", "8z^4-8z^2+1", "--family", "chebyshev")
        assert len(out["decompositions"]) == 1
        assert out["decompositions"][0]["mobius_witness"] is not None

    def test_classify(self, capsys):
        _, out = run(capsys, "classify", "--signature", "2,3,5")
        assert out["tag"] == "icosahedral" and out["chi"] == "1/30"

    def test_generate_bad_parameters(self, capsys):
        status, out = run(capsys, "generate", "chebyshev", "--m", "1", "--d", "3")
        assert status == 2 and out["error"]["type"] == "BadParameters"

    def test_unsupported(self, capsys):
        status, out = run(capsys, "generate", "theta", "--signature", "(2,3,5)")
        assert status == 2 and out["error"]["type"] == "Unsupported"


@pytest.mark.parametrize("argv", [
    ("monodromy", "--f", "(z^3-2z+5)/(z^2+z+1)"),
    ("fiberproduct", "--f", "4z^3-3z", "--g", "2z^2-1"),
    ("verify", *DIHEDRAL_ARGS),
], ids=lambda a: a[0])
def test_byte_identical_reruns(argv):
    cmd = [sys.executable, "-m", "semiconj.cli", *argv]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second
    assert json.loads(first)["schema"].startswith("semiconj.")


def test_joukowski_witness_uses_half_degree(capsys):
    _, out = run(capsys, "decompose", "--h", "(z^8+1)/(2z^4)", "--left-degree", "4", "--family", "joukowski")
    wits = [d["mobius_witness"] for d in out["decompositions"]]
    assert any(w is not None and w["m"] == 2 for w in wits)
