import json

import pytest

from weldalex.cli import main
from conftest import FIXTURES

SIGMA = str(FIXTURES / "sigma.tangle")
TAU = str(FIXTURES / "tau.tangle")
BETA = str(FIXTURES / "beta.tangle")
P = str(FIXTURES / "P.circuit")
Q = str(FIXTURES / "Q.circuit")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_compute_text(capsys):
    code, out, _ = run(capsys, "compute", SIGMA)
    assert code == 0
    assert out.strip() == ("(x1^x2, 1), (x1^x3, -t), (x1^x4, t - 1), "
                           "(x2^x4, 1), (x3^x4, -t)")


def test_compute_json(capsys):
    code, out, _ = run(capsys, "compute", SIGMA, "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["name"] == "sigma" and obj["grade"] == 2
    assert {"subset": [1, 2], "coeff": "1"} in obj["terms"]


def test_compute_matrix(capsys):
    code, out, _ = run(capsys, "compute", SIGMA, "--matrix")
    assert code == 0 and "[-t + 1]" in out


def test_alexpoly(capsys):
    code, out, _ = run(capsys, "alexpoly", BETA)
    assert code == 0 and out.strip() == "1"


def test_alexpoly_rejects_wide_tangles(capsys):
    code, _, err = run(capsys, "alexpoly", SIGMA)
    assert code == 1 and "error:" in err


def test_burau_word(capsys):
    code, out, _ = run(capsys, "burau", "--word", "1", "--strands", "2")
    # the Burau matrix of a single generator, up to a global unit
    assert code == 0 and "[-t]" in out and "[-1]" in out


def test_burau_split(capsys):
    code, out, _ = run(capsys, "burau", SIGMA)
    assert code == 0
    assert "k=0" in out and "rho1:" in out and "(x3^x4, -t)" in out


def test_compose_matches_tau(capsys, tmp_path):
    code, out_tau, _ = run(capsys, "compute", TAU)
    assert code == 0
    code, out_p, _ = run(capsys, "compose", P, SIGMA)
    assert code == 0
    code, out_q, _ = run(capsys, "compose", Q, SIGMA, BETA)
    assert code == 0
    assert out_p == out_tau == out_q


def test_compare(capsys, tmp_path):
    a = tmp_path / "a.tensor"
    b = tmp_path / "b.tensor"
    a.write_text("(x1^x2, 1), (x3^x4, -t)\n")
    b.write_text("(x1^x2, -t), (x3^x4, t^2)\n")
    code, out, _ = run(capsys, "compare", str(a), str(b))
    assert code == 0 and "equal up to unit" in out
    b.write_text("(x1^x2, 1), (x3^x4, t)\n")
    code, out, _ = run(capsys, "compare", str(a), str(b))
    assert code == 1 and "not equal" in out


def test_compare_mixed_formats(capsys, tmp_path):
    a = tmp_path / "a.tensor"
    a.write_text("(x1^x2, 1)\n")
    b = tmp_path / "b.json"
    b.write_text(json.dumps({"rank": 4, "grade": 2, "nvars": 1,
                             "terms": [{"subset": [1, 2], "coeff": "-t"}]}))
    code, out, _ = run(capsys, "compare", str(a), str(b))
    assert code == 0


def test_missing_file_is_an_error(capsys):
    code, _, err = run(capsys, "compute", "/nonexistent.tangle")
    assert code == 1 and "error:" in err


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest", "--trials", "15", "--seed", "1")
    assert code == 0 and "0 failed" in out
