import json
import os
import subprocess
import sys

import pytest

HERE = os.path.dirname(__file__)
DEMOS = os.path.join(HERE, "..", "demos")


def run_cli(*args):
    proc = subprocess.run(
        [sys.executable, "-m", "cactusflower.cli", *args],
        capture_output=True,
        text=True,
    )
    return proc.returncode, proc.stdout, proc.stderr


def test_enumerate_counts():
    code, out, _ = run_cli("enumerate", "--complex", "hatD", "--n", "3", "--counts")
    assert code == 0
    assert json.loads(out) == {"0": 1, "1": 6, "2": 3}


def test_enumerate_subdivide():
    code, out, _ = run_cli("enumerate", "--complex", "hatD", "--n", "3", "--subdivide")
    assert code == 0
    assert json.loads(out) == {"0": 10, "1": 24, "2": 12}


def test_verify_npc_and_hom_pass():
    code, out, _ = run_cli("verify", "npc", "--complex", "hatD", "--n", "4")
    assert code == 0 and json.loads(out)["pass"]
    code, out, _ = run_cli("verify", "hom", "--from", "AC", "--to", "AS", "--n", "5")
    assert code == 0 and json.loads(out)["pass"]
    code, out, _ = run_cli("verify", "hom", "--from", "AC", "--to", "vC", "--n", "3")
    assert code == 0 and json.loads(out)["statuses"] == {"proven": 12}
    code, out, _ = run_cli("verify", "diagram", "--n", "4")
    assert code == 0 and json.loads(out)["pass"]


def test_verify_presentation():
    code, out, _ = run_cli("verify", "presentation", "--complex", "hatP", "--n", "3")
    assert code == 0 and json.loads(out)["pass"]


def test_classify_figure_point():
    code, out, _ = run_cli("classify", "--in", os.path.join(DEMOS, "figure2.json"))
    assert code == 0
    data = json.loads(out)
    assert data["S"] == [[1, 4, 7], [2, 5, 6, 9], [3, 8]]
    assert data["B"] == [[1, 4, 7], [2, 5, 6], [3], [8], [9]]


def test_membership_pass_and_fail(tmp_path):
    code, out, _ = run_cli(
        "verify", "membership", "--variety", "f",
        "--in", os.path.join(DEMOS, "figure2.json"),
    )
    assert code == 0 and json.loads(out)["pass"]
    # perturb one coordinate and expect a failure with a witness
    with open(os.path.join(DEMOS, "figure2.json")) as fh:
        data = json.load(fh)
    data["nu"]["1,4"] = ["7", "3"]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    code, out, _ = run_cli("verify", "membership", "--variety", "f", "--in", str(bad))
    assert code == 1
    report = json.loads(out)
    assert not report["pass"]
    assert any(1 in idx and 4 in idx for _, idx in report["violations"])


def test_map_gamma():
    code, out, _ = run_cli("map", "--which", "gamma", "--in", os.path.join(DEMOS, "cubepoint.json"))
    assert code == 0
    data = json.loads(out)
    assert data["order"] == [1, 2, 3, 4]
    assert data["diffs"] == ["1/6", "1/30", "1/2"]


def test_path_csv():
    code, out, _ = run_cli("path", "--n", "4", "--k", "3", "--samples", "4")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n,k,t,s,coordinate,re,im"
    assert len(lines) > 10


def test_roots_verify():
    code, out, _ = run_cli("roots", "--type", "B2", "--verify", "face-centers")
    assert code == 0 and json.loads(out)["pass"]


def test_export_dot():
    code, out, _ = run_cli("export", "--complex", "hatP", "--n", "3", "--format", "dot")
    assert code == 0 and out.startswith("graph")


def test_determinism():
    args = ("enumerate", "--complex", "breveD", "--n", "4")
    assert run_cli(*args) == run_cli(*args)


def test_usage_errors():
    code, _, _ = run_cli("enumerate", "--complex", "Z", "--n", "3")
    assert code == 2
    code, _, _ = run_cli("bogus")
    assert code == 2
    code, _, _ = run_cli("classify", "--in", "/nonexistent/x.json")
    assert code == 2


def test_acceptance_single_criterion():
    code, out, _ = run_cli("verify", "acceptance", "--criterion", "1")
    assert code == 0
    assert "[PASS] criterion  1" in out
