import io
import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from permtutte.cli import main

DATA = Path(__file__).resolve().parent.parent / "data"
P5_TEXT = "2/15*x^3 + 4/15*x^2 + 1/3*x*y + 2/15*y^2 + 1/15*x + 1/15*y"


def run(*argv):
    out = io.StringIO()
    code = main([str(a) for a in argv], out)
    return code, out.getvalue()


def test_compute_polynomial():
    for method in ("auto", "brute", "recursive"):
        assert run("compute", DATA / "p5.json", "--method", method) == (0, P5_TEXT + "\n")


def test_compute_at_point_and_alt():
    assert run("compute", DATA / "p5.json", "--at", "2,0") == (0, "34/15\n")
    assert run("compute", DATA / "p5.json", "--at", "2,2", "--method", "brute") == (0, "64/15\n")
    assert run("compute", DATA / "p5.json", "--alt") == (0, "2/15\n")
    assert run("compute", DATA / "c8.txt", "--at", "1,1") == (0, "1\n")


def test_compute_errors(capsys):
    assert run("compute", DATA / "bad.json")[0] == 2
    assert "error" in capsys.readouterr().err
    assert run("compute", DATA / "missing.json")[0] == 2
    assert run("compute", DATA / "p5.json", "--at", "2")[0] == 2
    assert run("compute", DATA / "triangle.json")[0] == 2


def test_tutte_methods():
    for method in ("subset", "delcon", "activities", "decompose"):
        assert run("tutte", DATA / "triangle.json", "--method", method) == (0, "x^2 + x + y\n")
    assert run("tutte", DATA / "triangle.json", "--method", "activities", "--labeling", "3,1,2") == (0, "x^2 + x + y\n")
    assert run("tutte", DATA / "triangle.json", "--method", "activities", "--labeling", "1,1,2")[0] == 2


def test_tutte_decompose_verbose():
    code, text = run("tutte", DATA / "fig1.json", "--method", "decompose", "--verbose")
    assert code == 0
    lines = text.splitlines()
    assert lines[-1].startswith("total\t")
    assert all(line.startswith("tree {") for line in lines[:-1])
    total = lines[-1].split("\t", 1)[1]
    assert run("tutte", DATA / "fig1.json") == (0, total + "\n")


def test_tutte_disconnected():
    assert run("tutte", DATA / "two_components.json", "--method", "activities")[0] == 3


def test_verify_targets():
    code, text = run("verify", "identities", "--graph", DATA / "p5.json")
    assert code == 0
    docs = [json.loads(line) for line in text.splitlines()]
    assert {d["check"] for d in docs} >= {"duality under side swap", "parabola x=2", "t_{a,0} = t_{0,b}"}
    assert all(d["holds"] for d in docs)
    code, text = run("verify", "brylawski", "--max-vertices", 4, "--max-edges", 3)
    assert code == 0 and text
    code, text = run("verify", "inequalities", "--count", 5, "--max-vertices", 6, "--seed", 1)
    assert code == 0
    assert run("verify", "gluing", "--max-vertices", 3)[0] == 0
    assert run("verify", "gluing", "--max-vertices", 3, "--x", "1/2")[0] == 2


def test_scan():
    code, text = run("scan", "--a", "18..20", "--b", "20..22", "--c", "20..22", "--x", "2")
    assert code == 0
    docs = [json.loads(line) for line in text.splitlines()]
    hit = [d for d in docs if d["instance"] == "H(19,21,21)"]
    assert hit and abs(Fraction(hit[0]["margin"]) + Fraction(382, 10000)) < Fraction(1, 10000)
    margins = [Fraction(d["margin"]) for d in docs]
    assert margins == sorted(margins)
    assert run("scan", "--a", "x", "--b", "1", "--c", "1")[0] == 2


def test_survey():
    code, text = run("survey", 5)
    lines = text.splitlines()
    assert code == 0
    assert lines[0].split("\t")[0] == "m"
    assert lines[1].startswith("5\t3\t68/45\t1.5111\t")
    code, text = run("survey", 2, "--to", 4, "--no-header")
    assert [line.split("\t")[:3] for line in text.splitlines()] == [["2", "1", "1"], ["3", "1", "4/3"], ["4", "2", "49/36"]]


def test_estimate_is_reproducible():
    argv = ("estimate", DATA / "p5.json", "--at", "2,0", "--samples", 20000, "--seed", 42)
    first, second = run(*argv), run(*argv)
    assert first == second and first[0] == 0
    assert "seed=42" in first[1] and "samples=20000" in first[1]
    mean = float(first[1].split()[0])
    assert abs(mean - 34 / 15) < 0.05
    code, text = run("estimate", DATA / "triangle.json", "--tree", "1,2", "--samples", 3000, "--seed", 1, "--exact")
    assert code == 0 and text.splitlines()[-1] == "exact 1/3"
    assert run("estimate", DATA / "p5.json", "--seed", 1)[0] == 2


def test_argparse_rejects_unknown_flags():
    with pytest.raises(SystemExit) as info:
        main(["compute"])
    assert info.value.code == 2


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "permtutte.cli", "compute", str(DATA / "p5.json"), "--at", "2,0"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout == "34/15\n"
