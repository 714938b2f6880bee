import csv
import io
import json

import mpmath
import pytest

from periodlab.cli import EXIT_DOMAIN, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    assert code == EXIT_OK
    return json.loads(out)


def test_shuffle_plain(capsys):
    code, out, _ = run(capsys, "shuffle", "1", "10", "--format", "plain")
    assert code == EXIT_OK
    assert out.strip() == "2*110 + 101"


def test_shuffle_json(capsys):
    d = run_json(capsys, "shuffle", "1", "10")
    assert d["result"] == "2*110 + 101"
    assert d["terms"] == [{"term": "110", "coeff": "2"}, {"term": "101", "coeff": "1"}]


def test_stuffle(capsys):
    assert run_json(capsys, "stuffle", "zeta(2)", "zeta(3)")["result"] == "zeta(2,3) + zeta(3,2) + zeta(5)"
    assert run_json(capsys, "stuffle", "phi(1)", "phi(1)")["result"] == "2*zeta(-1,-1) + zeta(2)"


def test_reduce(capsys):
    assert run_json(capsys, "reduce", "zeta(1,2)", "--no-cache")["result"] == "zeta(3)"
    assert run_json(capsys, "reduce", "zeta(2)*zeta(2)", "--no-cache")["result"] == "5/2*zeta(4)"


def test_eval_json_fields(capsys):
    d = run_json(capsys, "eval", "zeta(1,2)", "--digits", "30")
    assert set(d) >= {"expr", "value", "digits", "error_exp"}
    assert isinstance(d["value"], str)
    with mpmath.workdps(40):
        assert abs(mpmath.mpf(d["value"]) - mpmath.zeta(3)) < mpmath.mpf(10) ** -29
    assert d["error_exp"] <= -30


def test_eval_zeta2(capsys):
    code, out, _ = run(capsys, "eval", "zeta(2)", "--format", "plain", "--digits", "6")
    assert out.strip() == "1.644934"


def test_dims(capsys):
    code, out, _ = run(capsys, "dims", "--max", "10", "--format", "plain")
    assert code == EXIT_OK
    assert out.strip() == "1,0,1,1,1,2,2,3,4,5,7"


def test_csv_output(capsys):
    code, out, _ = run(capsys, "dims", "--max", "4", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["weight", "dim"]
    assert rows[1:] == [["0", "1"], ["1", "0"], ["2", "1"], ["3", "1"], ["4", "1"]]


def test_assoc(capsys):
    d = run_json(capsys, "assoc", "--weight", "2")
    assert d["series"] == "[] + zeta(2)*[01] - zeta(2)*[10]"


def test_zigzag(capsys):
    d = run_json(capsys, "zigzag", "--loops", "3")
    assert d["exact"] == "6*zeta(3)"
    assert d["numeric"].startswith("7.2123414189575657123984289690")


def test_ae(capsys):
    d = run_json(capsys, "ae", "--alpha-inv", "137.035999", "--loops", "3")
    assert {"numeric", "residual", "within_tolerance", "reference"} <= set(d)
    assert d["numeric"].startswith("0.00115465848238963652")


@pytest.mark.parametrize("weight", [3, 4, 5])
def test_emitted_relations_evaluate_to_zero(capsys, weight):
    d = run_json(capsys, "relations", "--weight", str(weight))
    assert d["count"] == len(d["relations"]) > 0
    for rel in d["relations"]:
        v = run_json(capsys, "eval", rel, "--digits", "30")
        assert abs(mpmath.mpf(v["value"])) < mpmath.mpf(10) ** -25


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest", "--format", "plain", "--no-cache")
    assert code == EXIT_OK
    assert "FAIL" not in out


def test_exit_codes(capsys):
    assert run(capsys, "eval", "zeta(2,1)")[0] == EXIT_DOMAIN
    assert run(capsys, "reduce", "zeta(2,1)", "--no-cache")[0] == EXIT_DOMAIN
    assert run(capsys, "eval", "zeta(2")[0] == EXIT_USAGE
    assert run(capsys, "frobnicate")[0] == EXIT_USAGE
    assert run(capsys, "zigzag", "--loops", "2")[0] == EXIT_DOMAIN
    assert run(capsys, "ae", "--alpha-inv", "abc")[0] == EXIT_USAGE
    code, _, err = run(capsys, "eval", "zeta(2")
    assert "position 6" in err
