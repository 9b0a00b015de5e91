import json
import subprocess
import sys

import pytest

from octoinv.cli import main, parse_args
from octoinv.fields import Qp


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_examples():
    cmd = parse_args(["classify", "--field", "Qp:7"])
    assert cmd.verb == "classify" and cmd.field == Qp(7)
    cmd = parse_args(["element", "--name", "st:1,-1", "--field", "R", "--show", "fixed-subalgebra"])
    assert cmd.verb == "element" and cmd.name[0] == "st"


@pytest.mark.parametrize("argv", [
    ["classify", "--field", "Fp:4"],
    ["classify", "--field", "Q", "--q-primes", "3,5"],
    ["classify", "--field", "Q", "--q-primes", "15"],
    ["frobnicate"],
    ["hilbert", "--a", "1", "--b", "2", "--field", "Q", "--bogus"],
    ["element", "--name", "u:1,2"],
    ["hilbert", "--a", "x", "--b", "2", "--field", "R"],
])
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        parse_args(argv)
    assert exc.value.code == 2
    assert capsys.readouterr().out == ""


def test_hilbert_over_reals(capsys):
    code, out, _ = run_cli(capsys, "hilbert", "--a", "-1", "--b", "-1", "--field", "R")
    doc = json.loads(out)
    assert code == 0 and doc["symbol"] == -1 and doc["schema"] == "octo-involutions/1"


def test_hilbert_over_rationals(capsys):
    code, out, _ = run_cli(capsys, "hilbert", "--a", "-1", "--b", "3", "--field", "Q")
    doc = json.loads(out)
    assert doc["symbols"] == {"inf": 1, "2": -1, "3": -1}
    assert doc["ramified_places"] == ["2", "3"] and doc["verdict"] == "division"


def test_runtime_errors_exit_2(capsys):
    code, out, err = run_cli(capsys, "hilbert", "--a", "0", "--b", "3", "--field", "Qp:3")
    assert code == 2 and out == "" and "zero" in err
    code, _, err = run_cli(capsys, "element", "--name", "t:0,1")
    assert code == 2


def test_element_order(capsys):
    _, out, _ = run_cli(capsys, "element", "--name", "t:1,-1", "--show", "order")
    assert json.loads(out)["order"] == 2
    _, out, _ = run_cli(capsys, "element", "--name", "t:2,1", "--show", "order")
    assert json.loads(out)["order"] == "exceeds cap"


def test_element_matrix_and_fixed(capsys):
    _, out, _ = run_cli(capsys, "element", "--name", "s", "--field", "Fp:7")
    doc = json.loads(out)
    assert doc["automorphism"] is True and doc["matrix"][0][3] == "1"
    _, out, _ = run_cli(capsys, "element", "--name", "st:1,-1", "--field", "R", "--show", "fixed-subalgebra")
    doc = json.loads(out)
    assert doc["presentation"] == {"alpha": "-1", "beta": "-1"}
    assert len(doc["fixed_basis"]) == 4 and "zero_divisor" not in doc
    _, out, _ = run_cli(capsys, "fixed-subalgebra", "--name", "sp:7")
    doc = json.loads(out)
    assert doc["invariant"]["verdict"] == "division"
    assert doc["invariant"]["ramified_places"] == ["2", "7"]
    _, out, _ = run_cli(capsys, "fixed-subalgebra", "--name", "t:1,-1")
    assert len(json.loads(out)["zero_divisor"]) == 2


def test_form(capsys):
    _, out, _ = run_cli(capsys, "form", "--coeffs", "1,-2,-3,6", "--field", "Fp:5", "--decide", "isotropy")
    doc = json.loads(out)
    assert doc["verdict"] == "isotropic" and len(doc["witness"]) == 4
    _, out, _ = run_cli(capsys, "form", "--coeffs", "1,1,1", "--field", "Q")
    doc = json.loads(out)
    assert doc["verdict"] == "anisotropic" and "inf" in doc["anisotropic_places"]


def test_double(capsys):
    _, out, _ = run_cli(capsys, "double", "--alphas", "1,1,1")
    doc = json.loads(out)
    flags = [(l["dim"], l["commutative"], l["associative"], l["composition"]) for l in doc["levels"]]
    assert flags == [(1, True, True, True), (2, True, True, True), (4, False, True, True), (8, False, False, True)]
    assert doc["algebra"]["dim"] == 8


def test_classify_writes_report(tmp_path, capsys):
    out_file = tmp_path / "report.json"
    code, out, _ = run_cli(capsys, "classify", "--field", "Qp:3", "--out", str(out_file))
    assert code == 0
    assert json.loads(out_file.read_text()) == json.loads(out)
    assert json.loads(out)["count"] == 2


def test_text_format(capsys):
    code, out, _ = run_cli(capsys, "hilbert", "--a", "2", "--b", "3", "--field", "Qp:3", "--format", "text")
    assert code == 0 and "symbol: -1" in out


def test_output_is_deterministic():
    argv = [sys.executable, "-m", "octoinv", "classify", "--field", "Q", "--probe-samples", "2"]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True).stdout
    assert first == second


def test_verify_paper_respects_seed(monkeypatch, capsys):
    monkeypatch.setenv("OCTO_SEED", "17")
    code, out, _ = run_cli(capsys, "verify-paper", "--probe-samples", "2")
    doc = json.loads(out)
    assert code == 0 and doc["seed"] == 17 and doc["ok"]
    assert all(p["ok"] for f in doc["fields"] for p in f["probes"])
