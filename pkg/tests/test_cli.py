import io
import json
import subprocess
import sys

import pytest

from graphstat import cli, named
from graphstat.homology import FGAbelianGroup


def call(*argv):
    out = io.StringIO()
    code = cli.run(list(argv), out)
    return code, out.getvalue()


def report(*argv):
    code, text = call(*argv)
    assert code == 0, text
    return json.loads(text)


@pytest.fixture
def bowtie_file(tmp_path):
    p = tmp_path / "bowtie.json"
    p.write_text(named.bowtie().to_json())
    return str(p)


def test_homology_named():
    r = report("homology", "--named", "lasso", "--particles", "2")
    assert r["result"]["H1"] == {"rank": 2, "torsion": []}
    assert r["result"]["H0"] == {"rank": 1, "torsion": []}
    assert r["result"]["cells"] == [6, 8, 1]
    assert r["inputs"] == {}


def test_homology_file_records_digest(bowtie_file):
    r = report("homology", "--graph", bowtie_file, "--particles", "2")
    assert r["result"]["H1"] == {"rank": 4, "torsion": []}
    assert list(r["inputs"]) == [bowtie_file] and len(r["inputs"][bowtie_file]) == 64


def test_homology_needs_subdivision():
    code, _ = call("homology", "--named", "k4", "--particles", "3")
    assert code == 1
    r = report("homology", "--named", "k4", "--particles", "3", "--subdivide")
    assert r["result"]["H1"] == {"rank": 4, "torsion": []} and r["result"]["sufficiently_subdivided"]


def test_predict_k5_three():
    r = report("predict", "--named", "k5", "--particles", "3")
    assert r["result"]["group"] == {"rank": 6, "torsion": [2]}


def test_verify_bowtie():
    r = report("verify", "--named", "bowtie", "--particles", "2")
    assert r["result"]["agree"]
    assert set(r["result"]["groups"]) == {"predict", "direct", "morse"}
    assert all(g == {"rank": 4, "torsion": []} for g in r["result"]["groups"].values())


def test_verify_mismatch_exit_code(monkeypatch):
    class Fake:
        group = FGAbelianGroup(99)

    monkeypatch.setattr(cli, "predict_h1", lambda g, n, seed=None: Fake())
    code, text = call("verify", "--named", "triangle", "--particles", "2")
    assert code == 3
    assert not json.loads(text)["result"]["agree"]


def test_internal_failure_exit_code(monkeypatch):
    def boom(*a, **k):
        raise AssertionError("broken")

    monkeypatch.setattr(cli, "homology_h1", boom)
    assert call("homology", "--named", "triangle", "--particles", "2")[0] == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["homology", "--graph", "/nonexistent.json", "--particles", "2"],
        ["homology", "--named", "nosuch", "--particles", "2"],
        ["homology", "--named", "triangle"],
        ["homology", "--named", "triangle", "--particles", "0"],
        ["predict", "--named", "triangle", "--particles", "1"],
        ["bogus"],
        ["gauge", "check", "--named", "lasso"],
    ],
)
def test_input_errors(argv):
    assert call(*argv)[0] == 1


def test_malformed_graph(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"edges": [[1, 1]]}')
    assert call("homology", "--graph", str(p), "--particles", "2")[0] == 1


def test_output_is_deterministic():
    argv = ("morse", "--named", "k4", "--policy", "random", "--seed", "5")
    assert call(*argv)[1] == call(*argv)[1]


def test_timing_is_opt_in():
    assert "wall_time" not in report("predict", "--named", "lasso", "--particles", "2")
    assert "wall_time" in report("--timing", "predict", "--named", "lasso", "--particles", "2")


def test_seed_from_environment(monkeypatch):
    monkeypatch.setenv("GRAPHSTAT_SEED", "7")
    r = report("morse", "--named", "k4", "--policy", "random")
    assert r["result"]["seed"] == 7
    monkeypatch.setenv("GRAPHSTAT_SEED", "x")
    assert call("morse", "--named", "k4", "--policy", "random")[0] == 1


def test_morse_bowtie():
    r = report("morse", "--named", "bowtie")["result"]
    assert [len(x) for x in r["critical"]] == [1, 5, 1]
    assert r["boundary2"] == [[0], [0], [1], [-1], [0]]
    assert r["H1"] == {"rank": 4, "torsion": []}


def test_decompose_two_connected_example():
    r = report("decompose", "--named", "two_connected_example")["result"]
    assert r["cut_vertices"] == []
    (block,) = r["blocks"]
    assert block["c2"] == 3


def test_text_format():
    code, text = call("--format", "text", "predict", "--named", "bowtie", "--particles", "2")
    assert code == 0
    lines = text.splitlines()
    assert "result:" in lines and "  group:" in lines and "    rank: 4" in lines


def test_gauge_round_trip(tmp_path):
    r = report("gauge", "sample", "--named", "lasso", "--phases", "1/5,1/7")["result"]
    assert r["phases"] == ["1/5", "1/7"]
    pot = tmp_path / "pot.json"
    pot.write_text(json.dumps(r["potential"]))
    check = report("gauge", "check", "--named", "lasso", "--potential", str(pot))["result"]
    assert check == {"topological": True, "offending": []}
    dec = report("gauge", "decompose", "--named", "lasso", "--potential", str(pot))["result"]
    assert set(dec) == {"ab", "statistics"}
    lift = report("gauge", "lift", "--named", "lasso", "--potential", str(pot), "--particles", "3")["result"]
    assert lift["particles"] == 3 and lift["potential"]


def test_gauge_check_reports_offending_cell(tmp_path):
    pot = tmp_path / "pot.json"
    pot.write_text(json.dumps([[[1], [3, 4], "1/3"]]))
    r = report("gauge", "check", "--named", "lasso", "--potential", str(pot))["result"]
    assert not r["topological"] and r["offending"]


def test_bad_phase_list():
    assert call("gauge", "sample", "--named", "lasso", "--phases", "a,b")[0] == 1


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "graphstat", "predict", "--named", "triangle", "--particles", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["group"] == {"rank": 1, "torsion": []}
