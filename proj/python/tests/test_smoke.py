import csv

import pytest

import revham


def test_check_saddle():
    doc = revham.check("v", "u")
    assert doc["exit_code"] == revham.EXIT_OK
    assert doc["summary"] == "reversible; saddle; lambda^2 = 1"
    assert doc["schema_version"] == revham.schema_version


def test_check_failures():
    assert revham.check("v+u^2", "u")["exit_code"] == revham.EXIT_NOT_REVERSIBLE
    assert revham.check("v", "v")["exit_code"] == revham.EXIT_DEGENERATE
    bad = revham.check("v+*u", "u")
    assert bad["exit_code"] == revham.EXIT_PARSE
    assert "position" in bad


def test_normalform_example():
    doc = revham.normalform("v+u*v", "u+u^2", order=10)
    assert doc["exit_code"] == 0
    assert doc["symbolic_residual_zero"] is True
    assert doc["g"] == [[1, "-2"], [2, "-6"], [3, "-34"], [4, "-238"]]


def test_linear_hamiltonians():
    assert revham.normalform("v", "u", order=6)["H"] == [[2, 0, "-1/2"], [0, 2, "1/2"]]
    assert revham.normalform("v", "-u", order=6)["H"] == [[2, 0, "1/2"], [0, 2, "1/2"]]


def test_verify_and_diagnose():
    doc = revham.verify("v", "-u", order=6)
    assert doc["passed"] is True
    diag = revham.diagnose("v+u*v", "u+u^2", order=6)
    assert diag["c"] == "2"
    assert diag["dominance_ok"] is True


def test_plotdata(tmp_path):
    doc = revham.plotdata("v", "-u", tmp_path, order=4, plot={"grid": 5, "trajectory": False})
    assert doc["exit_code"] == 0
    with open(tmp_path / "level_set.csv") as f:
        rows = list(csv.reader(f))
    assert rows[0] == ["x", "y", "H", "H_of_hbar"]
    assert len(rows) == 26


def test_canonical():
    assert revham.canonical("v*u + u*u", 4) == revham.canonical("u^2+u*v", 4)
    with pytest.raises(revham.ParseError):
        revham.canonical("u+", 4)
    assert issubclass(revham.ParseError, revham.Error)


def test_unknown_command():
    with pytest.raises(ValueError):
        revham.run("nope", {"P": "v", "Q": "u"})
