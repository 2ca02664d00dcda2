import json
import os
import subprocess
import sys

import pytest

from tideal.cli import main
from tideal.decomposition import Decomposition


def run(*args: str, env: dict | None = None) -> subprocess.CompletedProcess:
    return subprocess.run(
        [sys.executable, "-m", "tideal", *args],
        capture_output=True,
        text=True,
        env={**os.environ, **(env or {})},
        timeout=600,
    )


def test_decompose_json_round_trip():
    res = run("decompose", "--n", "3", "--m", "4", "--format", "json", "--quiet")
    assert res.returncode == 0 and res.stderr == ""
    data = json.loads(res.stdout)
    assert data["complete"] and data["dimension"] == 12
    assert Decomposition.from_json(data) == Decomposition(4, {(4,): 1, (3, 1): 2, (2, 2): 1, (2, 1, 1): 1})


def test_progress_goes_to_stderr():
    res = run("decompose", "--n", "3", "--m", "4", "--workers", "1")
    assert "(3,1): 2" in res.stderr
    assert res.stdout.splitlines() == ["W_{3,4} = S^(4) ⊕ S^(3,1) x2 ⊕ S^(2,2) ⊕ S^(2,1,1)", "dim = 12"]


def test_dprobe_and_zeta(capsys):
    assert main(["dprobe", "--n", "2", "--quiet"]) == 0
    assert capsys.readouterr().out.strip() == "d(2) = 3"
    assert main(["zeta", "--order", "4", "--k", "1"]) == 0
    assert capsys.readouterr().out.strip() == "not invertible (gcd(2,4)=2)"
    assert main(["zeta", "--order", "5", "--k", "1", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out) == {"circulant_check": True, "gcd": 1, "invertible": True, "k": 1, "order": 5}


def test_json_outputs_parse(capsys):
    cases = [
        ["dim", "--n", "3", "--m", "5", "--method", "both"],
        ["bounds", "--n", "2", "--m", "4", "--with-dim"],
        ["upper", "--K", "1", "--n", "4"],
        ["stabilize", "--K", "1", "--n-min", "3", "--n-max", "5"],
        ["young-rule", "--l", "2", "--partition", "(2,1)"],
        ["coeffpoly", "--mono", "y2", "--mono", "y1^2", "--word", "y1 y2 y1^7", "--s-max", "6"],
    ]
    for args in cases:
        assert main([*args, "--format", "json", "--quiet", "--workers", "1"]) == 0, args
        json.loads(capsys.readouterr().out)


def test_young_rule_text(capsys):
    assert main(["young-rule", "--l", "2", "--partition", "(2,1)", "--format", "json"]) == 0
    got = Decomposition.from_json(json.loads(capsys.readouterr().out))
    assert got == Decomposition(5, {(4, 1): 1, (3, 2): 1, (3, 1, 1): 1, (2, 2, 1): 1})


def test_stabilize_reports_onset(capsys):
    assert main(["stabilize", "--K", "1", "--n-min", "3", "--n-max", "5", "--format", "json", "--quiet"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["N_obs"] == 3 and data["complete"]


@pytest.mark.parametrize(
    "args",
    [
        ["dim", "--n", "5", "--m", "3"],
        ["decompose", "--n", "0", "--m", "3"],
        ["zeta", "--order", "3", "--k", "5"],
        ["young-rule", "--l", "2", "--partition", "(1,2,x)"],
        ["coeffpoly", "--mono", "y2", "--word", "y2 y3"],
        ["stabilize", "--K", "2", "--n-min", "1", "--n-max", "3"],
        ["nonsense"],
    ],
)
def test_usage_errors_exit_2(args):
    res = run(*args)
    assert res.returncode == 2, res.stderr
    assert "usage" in res.stderr


def test_budget_exit_3():
    res = run("decompose", "--n", "7", "--m", "9", "--budget", "0", "--format", "json", "--quiet")
    assert res.returncode == 3
    assert json.loads(res.stdout)["complete"] is False


def test_workers_env_and_flag_agree():
    a = run("decompose", "--n", "5", "--m", "7", "--format", "json", "--quiet", env={"TIDEAL_WORKERS": "1"})
    b = run("decompose", "--n", "5", "--m", "7", "--format", "json", "--quiet", "--workers", "2")
    assert a.returncode == b.returncode == 0 and a.stdout == b.stdout


def test_verify_fast_deterministic():
    a = run("verify", "fast", "--seed", "7")
    b = run("verify", "fast", "--seed", "7")
    assert a.returncode == 0 and a.stdout == b.stdout
    lines = a.stdout.splitlines()
    assert lines[-1] == "all checks passed"
    assert all(line.startswith("PASS") for line in lines[:-1])
