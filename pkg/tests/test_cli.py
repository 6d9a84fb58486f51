import json
import subprocess
import sys

import pytest

from quadpoisson.cli import run

from conftest import DATA

DA = str(DATA / "da.bracket")
ORBIT7 = str(DATA / "orbit7.bracket")
NONJACOBI = str(DATA / "nonjacobi.bracket")
MISSING = str(DATA / "missing.bracket")
MOVED5 = str(DATA / "cubic_orbit5_moved.cubic")

# (argv, expected exit code): one passing and one failing input per subcommand
CONTRACT = [
    (["check", DA], 0),
    (["check", NONJACOBI], 1),
    (["classify", DA], 0),
    (["classify", NONJACOBI], 1),
    (["quantize", ORBIT7, "--degree", "4"], 0),
    (["quantize", NONJACOBI, "--degree", "3"], 1),
    (["flatness", ORBIT7, "--degree", "4"], 0),
    (["flatness", NONJACOBI, "--degree", "3"], 1),
    (["dualize", ORBIT7], 0),
    (["dualize", MISSING], 2),
    (["orbit", MOVED5, "--witness", "1,-1,0; 0,1,0; 0,0,1", "--id", "5"], 0),
    (["orbit", MOVED5, "--witness", "1,0,0; 0,1,0; 0,0,1", "--id", "5"], 1),
    (["realize", "--case", "orbit5", "--verify", "--independence", "2"], 0),
    (["realize", "--case", "orbit7", "--params", "k=1", "c=1", "d=1", "--verify"], 2),
    (["series10", "--c1", "1", "--c2", "0", "--order", "2"], 0),
    (["series10", "--c1", "1", "--c2", "0", "--order", "1"], 2),
]


@pytest.mark.parametrize("argv,code", CONTRACT, ids=lambda v: " ".join(v) if isinstance(v, list) else str(v))
def test_exit_code_contract(argv, code, capsys):
    assert run(argv) == code
    out, err = capsys.readouterr()
    if code == 0:
        assert out and not err
    elif code == 1:
        assert out and "check failed" in err
    else:
        assert err.startswith("error:") or "usage:" in err


def test_check_report(capsys):
    assert run(["check", DA]) == 0
    out = capsys.readouterr().out
    assert "trace: 0" in out
    assert "rank: 3" in out


def test_check_prints_the_residual(capsys):
    assert run(["--format", "json", "check", NONJACOBI]) == 1
    report = json.loads(capsys.readouterr().out)
    assert report["jacobi_linear_residual"] == "-2*x1^2*x2 - 2*x1*x3^2 - 2*x2^2*x3"
    assert report["poisson"] is False


def test_quantize_dimension_row(capsys):
    assert run(["quantize", ORBIT7, "--degree", "6"]) == 0
    out = capsys.readouterr().out
    assert "dimension_generic: 3 6 10 15 21 28" in out
    assert "diamond_residual: 0" in out


def test_flatness_negative_control(capsys):
    assert run(["--format", "json", "flatness", NONJACOBI, "--degree", "3"]) == 1
    report = json.loads(capsys.readouterr().out)
    assert report["splitting"][0] == {"degree": 3, "rank_h0": 17, "rank_generic": 18, "splitting": False}
    assert report["W"]["dim_generic"] == 0


def test_classify_report(capsys):
    assert run(["--format", "json", "classify", DA]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["case"] == "da"
    assert report["spectrum"] == [["-3", 1], ["1", 1], ["2", 1]]


def test_realize_report(capsys):
    assert run(["--format", "json", "realize", "--case", "rank3-quantum", "--verify", "--independence", "3"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["residuals"] == ["0", "0", "0"]
    assert report["independence"]["rank"] == 20


@pytest.mark.parametrize("argv", [
    ["bogus"],
    [],
    ["check"],
    ["check", str(DATA / "does-not-exist.bracket")],
    ["quantize", ORBIT7, "--degree", "9"],
    ["flatness", ORBIT7, "--degree", "2"],
    ["realize", "--case", "nope"],
    ["realize", "--case", "orbit5", "--params", "oops"],
    ["orbit", MOVED5, "--witness", "1,0,0; 0,1,0; 0,0,1"],
    ["orbit", MOVED5, "--witness", "0,0,0; 0,0,0; 0,0,0", "--id", "5"],
    ["series10", "--c1", "x", "--c2", "0", "--order", "3"],
])
def test_usage_errors(argv, capsys):
    assert run(argv) == 2
    capsys.readouterr()


def test_output_is_deterministic(capsys):
    run(["--format", "json", "quantize", DA, "--degree", "3"])
    first = capsys.readouterr().out
    run(["--format", "json", "quantize", DA, "--degree", "3"])
    assert capsys.readouterr().out == first


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "quadpoisson.cli", "check", NONJACOBI],
                          capture_output=True, text=True)
    assert proc.returncode == 1
    assert "check failed" in proc.stderr
