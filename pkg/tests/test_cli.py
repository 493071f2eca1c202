import json
import subprocess
import sys

import pytest

from tropcheck.cli import main

from helpers import FIXTURES


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def test_analyze_example1(capsys):
    code, data = run_json(capsys, "analyze", str(FIXTURES / "example1.trop"))
    assert code == 0 and data["verdict"] == "Isomorphism"
    assert data["degree"] == 1 and data["fast_path"] == "Isomorphism"
    assert len(data["inverse_pieces"]) == 4


def test_analyze_example2(capsys):
    code, data = run_json(capsys, "analyze", "@example2")
    assert code == 1 and data["verdict"] == "NotIsomorphism"
    assert len(data["witnesses"]) == 2 and data["degree"] == 2
    assert data["signs"] == {"pos": data["pieces"], "neg": 0, "zero": 0}


@pytest.mark.parametrize(
    "name, code",
    [("identity", 0), ("example1", 0), ("g2d", 1), ("h3d", 1), ("example2", 1)],
)
def test_exit_codes_on_fixtures(capsys, name, code):
    assert run(capsys, "analyze", f"@{name}")[0] == code


def test_general_fixture_with_params(capsys):
    argv = ["analyze", "@example1-general", "--param", "alpha=0", "--param", "beta=2",
            "--param", "a=0", "--param", "b=2"]
    code, data = run_json(capsys, *argv)
    assert code == 0 and data["verdict"] == "Isomorphism"
    code, _, err = run(capsys, "analyze", "@example1-general")
    assert code == 64 and "unknown identifier" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["analyze", "/nonexistent/map.trop"],
        ["analyze"],
        ["bogus", "@identity"],
        ["eval", "@example2", "1,1"],
        ["eval", "@example2", "1,x,0"],
        ["plot", "@example2"],
        ["analyze", "@nosuchfixture"],
        ["analyze", "@identity", "--format", "yaml"],
        ["plot", "@identity", "--viewport", "1,0,0,1"],
        ["analyze", "@identity", "--param", "novalue"],
    ],
)
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        raise SystemExit(main(argv))
    assert exc.value.code == 64


def test_parse_error_exit(tmp_path, capsys):
    bad = tmp_path / "bad.trop"
    bad.write_text("map bad(x) = (x + )\n")
    code, _, err = run(capsys, "analyze", str(bad))
    assert code == 64 and "column" in err


def test_pieces(capsys):
    code, data = run_json(capsys, "pieces", "@example1")
    assert code == 0 and data["N"] == 4
    assert [p["matrix"] for p in data["pieces"]] == [
        [["1", "0"], ["0", "1"]],
        [["1", "2"], ["0", "1"]],
        [["1", "0"], ["2", "1"]],
        [["5", "2"], ["2", "1"]],
    ]
    assert run_json(capsys, "pieces", "@identity")[1]["N"] == 1
    assert {p["jac"] for p in run_json(capsys, "pieces", "@example2")[1]["pieces"]} == {"2"}


def test_eval(capsys):
    code, data = run_json(capsys, "eval", "@example2", "(1,1,0)")
    assert code == 0 and data["value"] == ["1", "3", "1"]
    _, data = run_json(capsys, "eval", "@example2", "-1,-1,8")
    assert data["value"] == ["1", "3", "1"]
    _, data = run_json(capsys, "eval", "@identity", "3/2,-7")
    assert data["value"] == ["3/2", "-7"]


def test_preimage(capsys):
    code, data = run_json(capsys, "preimage", "@example2", "1,3,1")
    assert code == 0
    assert sorted(p["point"] for p in data["points"]) == sorted([["1", "1", "0"], ["-1", "-1", "8"]])


def test_clarke(capsys):
    code, data = run_json(capsys, "clarke", "@example1", "0,0")
    assert code == 0
    block = data["clarke"]
    assert block["verdict"] == "ContainsSingular"
    assert block["witness"] == {"pieces": [2, 3], "weights": ["1/2", "1/2"], "det": "0"}


def test_invert(capsys):
    code, data = run_json(capsys, "invert", "@example1")
    assert code == 0 and len(data["inverse_pieces"]) == 4
    code, data = run_json(capsys, "invert", "@example2")
    assert code == 1 and data["inverse_pieces"] is None


def test_plot(tmp_path, capsys):
    out = tmp_path / "cells.svg"
    assert run(capsys, "plot", "@example1", "--out", str(out))[0] == 0
    svg = out.read_text()
    assert svg.startswith("<svg") and svg.count("<polygon") == 4
    _, svg, _ = run(capsys, "plot", "@identity")
    assert svg.count("<polygon") == 1


def test_text_format(capsys):
    code, out, _ = run(capsys, "analyze", "@example2", "--format", "text")
    assert code == 1 and out.startswith("map example2: NotIsomorphism")


def test_deterministic_reports(capsys, monkeypatch):
    first = run(capsys, "analyze", "@g2d", "--seed", "9")[1]
    assert run(capsys, "analyze", "@g2d", "--seed", "9")[1] == first
    monkeypatch.setenv("TROPCHECK_SEED", "9")
    assert run(capsys, "analyze", "@g2d")[1] == first
    assert run(capsys, "analyze", "@g2d", "--seed", "10")[1] != first


def test_console_entry_point_byte_identical(tmp_path):
    cmd = [sys.executable, "-m", "tropcheck.cli", "analyze", "@example2", "--seed", "4"]
    a = subprocess.run(cmd, capture_output=True)
    b = subprocess.run(cmd, capture_output=True)
    assert a.returncode == b.returncode == 1
    assert a.stdout == b.stdout and a.stdout
