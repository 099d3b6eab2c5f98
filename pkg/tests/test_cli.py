import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from cliffpin import cli, reps, suites

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize(
    "argv,expected",
    [
        (
            ["classify", "10", "1"],
            "p=10 q=1 d=11 pq_mod8=1 type=NormalNonSimple simple=false S=R nu_sq=+1 T=D "
            "Pin_e=Spin^h Lambda=Spin reduced_L=Spin\n",
        ),
        (["irrep", "1", "0", "--eps", "+1", "--verify"], "dim=1, all checks passed\n"),
        (["irrep", "3", "0"], "p=3 q=0 dim=4 eps=none S=C\n"),
        (["irrep", "1", "0", "--eps", "-1", "--show"], "1 0 1 -1\n\n-1\n"),
        (["pairing", "1", "0", "--eps", "+1"], "sym=+1 type=+1 beta=+1 omega_law=ok\n1\n"),
        (["hyp", "mul", "1,2", "3,-1"], "1 + 5j\n"),
        (["hyp", "conj", "1,2"], "1 - 2j\n"),
        (["hyp", "mod", "0,1"], "-1\n"),
        (["hyp", "inv", "2,1"], "2/3 - 1/3j\n"),
        (["hyp", "split", "2,1"], "(3, 1)\n"),
        (["hyp", "component", "0,1"], "+-\n"),
        (["hyp", "component", "-1"], "--\n"),
        (["hyp", "component", "1,1"], "not invertible\n"),
        (
            ["obstruct", "--input", str(FIXTURES / "rp2_20.json"), "--structure", "auto"],
            "elementary pinor bundle: NOT EXISTS (untwisted Pin obstruction = a^2)\n",
        ),
        (
            ["obstruct", "--input", str(FIXTURES / "rp2_02.json"), "--structure", "pin"],
            "untwisted Pin: EXISTS (equivalently a twisted Pin structure on (M, g))\n",
        ),
        (
            ["obstruct", "--input", str(FIXTURES / "spinq_candidates.json"), "--structure", "spinq"],
            "Spin^q: EXISTS\n",
        ),
    ],
)
def test_golden_output(argv, expected):
    code, out, err = run(*argv)
    assert (code, out, err) == (0, expected, "")


def test_table_matches_golden():
    code, out, _ = run("table", "8")
    assert code == 0
    assert out == (GOLDEN / "table8.csv").read_text()
    code, out, _ = run("table", "3")
    assert out.splitlines() == (GOLDEN / "table8.csv").read_text().splitlines()[:10]


def test_pairing_prints_square_matrix():
    code, out, _ = run("pairing", "0", "2")
    lines = out.splitlines()
    assert code == 0 and lines[0].endswith("omega_law=ok")
    assert len(lines) == 5 and all(len(l.split()) == 4 for l in lines[1:])


def test_export_then_import(tmp_path):
    path = tmp_path / "rep.txt"
    code, _, _ = run("irrep", "2", "1", "--eps", "-1", "--export", str(path))
    assert code == 0
    rep = reps.import_rep(path.read_text())
    assert rep.gammas == reps.build_irrep(rep.sig, -1).gammas


def test_obstruct_json():
    code, out, _ = run("obstruct", "--input", str(FIXTURES / "rp2_20.json"), "--json")
    payload = json.loads(out)
    assert code == 0
    assert payload["exists"] == "NOT EXISTS"
    assert payload["obstruction_text"] == "a^2"
    assert payload["signature"] == [2, 0]


def test_verify_single_suite():
    code, out, _ = run("verify", "--suite", "obstruction")
    lines = out.splitlines()
    assert code == 0
    assert all(l.startswith("PASS obstruction.") for l in lines[:-1])
    assert lines[-1] == "4 passed, 0 failed (seed 7)"


def test_verify_json():
    code, out, _ = run("verify", "--suite", "hyperbolic", "--json")
    reports = json.loads(out)
    assert code == 0
    assert {r["status"] for r in reports} == {"pass"}


def test_verify_failure_exit_code(monkeypatch):
    def fake(names, seed, samples, progress):
        r = {"suite": "x", "property": "p", "signature": None, "samples": 1, "status": "fail",
             "counterexample": {"reason": "forced"}}
        progress(r)
        return [r]

    monkeypatch.setattr(suites, "run_suites", fake)
    code, out, _ = run("verify", "--all")
    assert code == 3
    assert "FAIL x.p samples=1 :: forced" in out


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate"],
        ["classify", "1"],
        ["classify", "0", "0"],
        ["classify", "-1", "2"],
        ["table", "0"],
        ["irrep", "2", "0", "--eps", "+1"],
        ["irrep", "1", "0"],
        ["irrep", "1", "0", "--eps", "2"],
        ["verify"],
        ["verify", "--suite", "nope"],
        ["obstruct", "--input", "/nonexistent/ctx.json"],
        ["obstruct", "--input", str(FIXTURES / "rp2_20.json"), "--structure", "spinc"],
        ["obstruct", "--input", str(FIXTURES / "rp2_20.json"), "--structure", "spino"],
        ["hyp", "inv", "1,1"],
        ["hyp", "mul", "1,2"],
        ["hyp", "conj", "1,2", "3,4"],
        ["hyp", "mod", "x"],
    ],
)
def test_invalid_input_exit_code(argv):
    code, out, err = run(*argv)
    assert code == 2
    assert err


def test_help_exits_cleanly():
    code, out, _ = run("--help")
    assert code == 0


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "cliffpin", "classify", "1", "10"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert proc.stdout.strip().endswith("reduced_L=Spin^o")
    proc = subprocess.run([sys.executable, "-m", "cliffpin", "table"], capture_output=True, text=True, check=False)
    assert proc.returncode == 2
