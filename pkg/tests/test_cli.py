import json

import pytest

from doubleplane.cli import (InstanceError, deterministic_part, emit_instance, emit_report, parse_instance,
                             parse_module, parse_report, random_instance, run_verify)
from doubleplane.cli.main import run

E1 = """\
# the worked example
s = 1
A = y, z
p_row = t, -y
f_col = t, y
h = 1
"""


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return _write


def test_parse_e1():
    inst = parse_instance(E1)
    assert inst.s == 1 and inst.p == 32003
    assert inst.A == [["y", "z"]]
    assert inst.p_row == ["t", "-y"]
    assert inst.seed is None


def test_emit_parse_round_trip():
    inst = parse_instance(E1)
    assert parse_instance(emit_instance(inst, "comment")) == inst


def test_parse_error_position():
    with pytest.raises(InstanceError) as err:
        parse_instance(E1.replace("A = y, z", "A = y^, z"))
    assert (err.value.line, err.value.column) == (3, 7)


@pytest.mark.parametrize("text,fragment", [
    ("s = 1\n", "missing key"),
    (E1 + "q = 3\n", "unknown key"),
    (E1.replace("A = y, z", "A = y"), "A must be"),
    (E1.replace("p_row = t, -y", "p_row = t"), "p_row needs"),
    (E1 + "s = 2\n", "duplicate"),
    ("s = 1\nnonsense\n", "key = value"),
])
def test_instance_errors(text, fragment):
    with pytest.raises(InstanceError, match=fragment):
        parse_instance(text)


def test_module_file():
    mf = parse_module("M = y, z, t  # one row\nseed = 4\n")
    assert mf.M == [["y", "z", "t"]] and mf.seed == 4
    with pytest.raises(InstanceError):
        parse_module("M = y, z\n")


def test_e1_report():
    report = run_verify(parse_instance(E1))
    statuses = {k: v["status"] for k, v in report["verdicts"].items()}
    for name in ("residual", "curve", "exactness", "minimality", "duality", "annihilator"):
        assert statuses[name] == "pass"
    assert report["invariants"] == {"d": 4, "delta": 2, "deg_h": 0, "deg_Z": 1, "genus": 0}
    assert report["rao"]["values"] == {"1": 1}
    assert report["betti"] == {"0": {"2": 1, "3": 3}, "1": {"4": 4}, "2": {"5": 1}}


def test_report_round_trip_and_determinism():
    a = run_verify(parse_instance(E1))
    b = run_verify(parse_instance(E1))
    assert parse_report(emit_report(a)) == a
    assert deterministic_part(a) == deterministic_part(b)
    assert json.loads(emit_report(a))["verdicts"]["residual"]["status"] == "pass"


def test_verify_exit_codes(write, capsys):
    assert run(["verify", write("e1.txt", E1)]) == 0
    assert run(["verify", write("bad.txt", E1.replace("f_col = t, y", "f_col = y, y"))]) == 1
    out = capsys.readouterr().out
    assert "I_s(M) not irrelevant" in out
    assert "residual           pass" in out
    assert run(["verify", write("parse.txt", E1.replace("A = y, z", "A = y^, z"))]) == 2
    assert "line 3, column 7" in capsys.readouterr().err
    assert run(["verify", "/nonexistent/file"]) == 2


def test_report_file(write, tmp_path):
    out = tmp_path / "report.json"
    assert run(["verify", write("e1.txt", E1), "--report", str(out), "--oracle"]) == 0
    report = json.loads(out.read_text())
    assert report["verdicts"]["oracle"]["status"] == "pass"
    assert list(report) == sorted(report)


def test_resolve_and_rao_commands(write, capsys):
    path = write("e1.txt", E1)
    assert run(["resolve", path]) == 0
    assert "F_3: R(-5)^1" in capsys.readouterr().out
    assert run(["rao", path]) == 0
    assert "rho = {1:1}" in capsys.readouterr().out


def test_random_command(tmp_path, capsys):
    out = tmp_path / "r.txt"
    assert run(["random", "--s", "1", "--deg", "a=1,h=0", "--seed", "7", "--out", str(out)]) == 0
    assert "d=4" in capsys.readouterr().out
    inst = parse_instance(out.read_text())
    assert inst.seed == 7 and inst.s == 1
    assert random_instance(1, "a=1,h=0", 7) == inst


def test_random_s2(capsys):
    assert run(["random", "--s", "2", "--deg", "a=1", "--seed", "11"]) == 0
    report_line = [l for l in capsys.readouterr().out.splitlines() if l.strip().startswith("d=")][0]
    vals = dict(kv.split("=") for kv in report_line.split())
    assert int(vals["d"]) == 2 * int(vals["delta"]) + int(vals["deg_h"])


def test_random_bad_profile(capsys):
    assert run(["random", "--s", "1", "--deg", "a=1,f=0", "--seed", "1"]) == 2
    assert "condition (iii)" in capsys.readouterr().err
    assert run(["random", "--s", "0"]) == 2


def test_random_with_prime(capsys):
    assert run(["random", "--s", "1", "--seed", "2", "--prime", "101"]) == 0
    assert "p = 101" in capsys.readouterr().out


def test_from_module(write, capsys):
    assert run(["from-module", write("m.txt", "M = y, z, t\n")]) == 0
    out = capsys.readouterr().out
    assert "rho = {1:1}" in out and "round_trip         pass" in out
    assert run(["from-module", write("u.txt", "M = y, z, 1\n")]) == 2
    assert "entry (1,4) = 1 is a unit" in capsys.readouterr().err


def test_from_module_s2(write, tmp_path, capsys):
    out = tmp_path / "inst.txt"
    text = "M = y, z, t, y^2 + t^2; z, t, y, z^2\n"
    assert run(["from-module", write("m2.txt", text), "--out", str(out)]) == 0
    assert parse_instance(out.read_text()).s == 2
