import json
import subprocess
import sys

import pytest

from vankallen import cli
from vankallen.cartan import build_root_system
from vankallen.characters import gch_K, macdonald_E_inf
from vankallen.poly import GradedChar, GroupAlgebraElt


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_qbg_examples(capsys):
    code, out, _ = run(capsys, "qbg", "--type", "A2", "--J", "")
    assert code == 0 and len(json.loads(out)["vertices"]) == 6
    code, out, _ = run(capsys, "qbg", "--type", "A1")
    data = json.loads(out)
    assert len(data["vertices"]) == 2 and len(data["edges"]) == 2
    code, out, _ = run(capsys, "qbg", "--type", "A2", "--J", "2")
    assert len(json.loads(out)["vertices"]) == 3
    code, out, _ = run(capsys, "qbg", "--type", "A2", "--format", "dot")
    assert out.startswith("digraph")
    code, out, _ = run(capsys, "qbg", "--type", "A", "--rank", "2", "--lambda", "1,0", "--format", "text")
    assert "3 vertices" in out


def test_macdonald_and_eqb_examples(capsys):
    code, out, _ = run(capsys, "macdonald", "--type", "A1", "--lambda", "1", "--w", "s1")
    assert code == 0 and out == "e^(-w1) + q^-1 e^(w1)\n"
    code, out, _ = run(capsys, "macdonald", "--type", "A1", "--lambda", "1", "--w", "s1", "--method", "recursion")
    assert out == "e^(-w1) + q^-1 e^(w1)\n"
    code, out, _ = run(capsys, "eqb", "--type", "A2", "--w", "s1 s2 s1")
    assert code == 0 and out.count(",") == 5
    code, out, _ = run(capsys, "eqb", "--type", "A2", "--w", "s1 s2 s1", "--format", "json")
    assert len(json.loads(out)["s1 s2 s1"]) == 6


def test_verify_example(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "all", "--type", "A2", "--lambda", "1,1")
    assert code == 0 and out.strip().endswith("0 failures")
    code, out, _ = run(capsys, "verify", "--suite", "rec1", "--type", "A2", "--lambda", "1,1", "--format", "json")
    data = json.loads(out)
    assert data["failed"] == 0 and data["checked"] == len(data["records"])
    assert all(set(r) == {"case", "identity", "status", "lhs", "rhs"} for r in data["records"])


def test_verify_reports_failures_with_exit_one(capsys, monkeypatch):
    def broken(cases, names, jobs, seed=0, trunc=6):
        return [{"case": "A1 lambda=(1,) w=e", "identity": "dem1", "status": "fail", "lhs": "1", "rhs": "2"}]

    monkeypatch.setattr(cli, "run_identities", broken)
    code, out, _ = run(capsys, "verify", "--type", "A1", "--lambda", "1")
    assert code == 1 and "FAIL dem1" in out


def test_json_outputs_round_trip(capsys):
    R = build_root_system("B2")
    code, out, _ = run(capsys, "macdonald", "--type", "B2", "--lambda", "1,1", "--format", "json")
    data = json.loads(out)
    for word, terms in data.items():
        assert GroupAlgebraElt.from_json(terms) == macdonald_E_inf(R, (1, 1), R.parse(word))
    code, out, _ = run(capsys, "gch", "--type", "B2", "--lambda", "1,1", "--w", "s1 s2", "--format", "json")
    rec = json.loads(out)["s1 s2"]
    assert GradedChar.from_json(rec["character"]) == gch_K(R, (1, 1), R.parse("s1 s2"))
    assert rec["trunc"] == 6


def test_gch_methods_agree_on_truncation(capsys):
    outs = []
    for m in ("K", "V", "moebius", "direct", "partitions"):
        code, out, _ = run(capsys, "gch", "--type", "A2", "--lambda", "1,0", "--method", m, "--trunc", "3", "--format", "json")
        assert code == 0
        outs.append({w: r["truncated"] for w, r in json.loads(out).items()})
    assert outs[0] == outs[2] == outs[3] == outs[4]
    assert outs[1] != outs[0]


def test_rootsys_qls_kset(capsys):
    code, out, _ = run(capsys, "rootsys", "--type", "G2", "--format", "json")
    data = json.loads(out)
    assert data["weyl_group_order"] == 12 and data["highest_root"] == [3, 2]
    code, out, _ = run(capsys, "qls", "--type", "A1", "--lambda", "2", "--format", "json")
    rows = json.loads(out)
    assert len(rows) == 4 and all(r["deg"] <= 0 for r in rows)
    code, out, _ = run(capsys, "qls", "--type", "A1", "--lambda", "1", "--w", "s1")
    assert "deg at s1 -1" in out
    code, out, _ = run(capsys, "kset", "--type", "A1", "--w", "s1", "--format", "json")
    rec = json.loads(out)["s1"]
    assert rec["free"] == [1] and {d["u"] for d in rec["directions"]} == {"e", "s1"}


@pytest.mark.parametrize(
    "argv",
    [
        ["qbg", "--type", "E6"],
        ["qbg", "--type", "A7"],
        ["qbg"],
        ["macdonald", "--type", "A2", "--lambda", "1"],
        ["macdonald", "--type", "A2", "--lambda", "1,-1"],
        ["macdonald", "--type", "A2", "--lambda", "1,0", "--w", "s2"],
        ["macdonald", "--type", "A2", "--lambda", "1,1", "--w", "s1 s1"],
        ["macdonald", "--type", "A2", "--lambda", "1,1", "--method", "magic"],
        ["eqb", "--type", "A2", "--w", "s4"],
        ["verify", "--suite", "nonsense"],
        ["gch", "--type", "A2", "--lambda", "1,1", "--trunc", "-1"],
        ["qls", "--type", "A2", "--lambda", "1,1", "--format", "dot"],
        ["frobnicate"],
    ],
)
def test_usage_errors_exit_two(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == ""
    assert err


def test_config_file_and_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text('# sample\ntype = "A1"\nlambda = 1\nw = s1\nmethod = qls\n')
    code, out, _ = run(capsys, "macdonald", "--config", str(cfg))
    assert code == 0 and out == "e^(-w1) + q^-1 e^(w1)\n"
    code, out, _ = run(capsys, "macdonald", "--config", str(cfg), "--w", "e")
    assert out == "e^(w1)\n"
    bad = tmp_path / "bad.cfg"
    bad.write_text("colour = blue\n")
    assert run(capsys, "qbg", "--config", str(bad))[0] == 2
    assert run(capsys, "qbg", "--config", str(tmp_path / "missing.cfg"))[0] == 2


def test_out_file(tmp_path, capsys):
    target = tmp_path / "graph.json"
    code, out, _ = run(capsys, "qbg", "--type", "B2", "--out", str(target))
    assert code == 0 and out == ""
    assert len(json.loads(target.read_text())["vertices"]) == 8


def test_output_is_identical_across_job_counts(capsys):
    argv = ["verify", "--type", "A2", "--max-coord", "1", "--format", "json"]
    outs = [run(capsys, *argv, "--jobs", str(j))[1] for j in (1, 2, 1)]
    assert outs[0] == outs[1] == outs[2]
    assert json.loads(outs[0])["failed"] == 0


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "vankallen.cli", "macdonald", "--type", "A1", "--lambda", "1", "--w", "e"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout == "e^(w1)\n"
