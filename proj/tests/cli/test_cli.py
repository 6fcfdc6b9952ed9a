import json
import os
import pathlib
import subprocess

import pytest

ROOT = pathlib.Path(__file__).resolve().parents[2]
BIN = os.environ.get("FORCELAB_BIN", str(ROOT / "build" / "tools" / "forcelab"))
DATA = pathlib.Path(os.environ.get("FORCELAB_DATA", str(ROOT / "data")))


def run(*args, cwd=None):
    return subprocess.run([BIN, *args], capture_output=True, text=True, cwd=cwd)


def run_json(*args):
    r = run("--json", *args)
    assert r.returncode == 0, r.stderr
    return json.loads(r.stdout)


def test_hf_parse_reports_code():
    out = run_json("hf", "parse", "{{},{{}}}")
    assert out["code"] == "3"
    assert out["rank"] == 2
    assert out["transitive"] is True


def test_vlevel_and_lhier_sizes():
    assert run_json("hf", "vlevel", "4")["size"] == 16
    lev = run_json("logic", "lhier", "--levels", "4")
    assert [level["size"] for level in lev["levels"]] == [0, 1, 2, 4, 16]


def test_domain_errors_exit_1():
    r = run("hf", "parse", "{")
    assert r.returncode == 1
    assert "position 1" in r.stderr
    r = run("hf", "vlevel", "6")
    assert r.returncode == 1
    assert "budget" in r.stderr.lower() or "max_" in r.stderr
    r = run("order", "check", "--poset", "fin_partial:0")
    assert r.returncode == 1


def test_usage_errors_exit_2():
    assert run().returncode == 2
    assert run("hf", "bogus").returncode == 2
    assert run("hf", "parse").returncode == 2
    assert run("order", "check").returncode == 2
    assert run("--no-such-flag", "hf", "parse", "{}").returncode == 2
    assert run("hf", "--help").returncode == 0


def test_poset_json_errors_name_the_pair(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"elements": ["a", "b"], "leq": [["a", "zz"]]}))
    r = run("order", "check", "--poset", str(bad))
    assert r.returncode == 1
    assert '["a","zz"]' in r.stderr


def test_forcing_value_of_one_step_example():
    out = run_json(
        "forcing", "bval", "--poset", "fin_partial:0:0,1", "--formula", "(in z r)",
        "--name", "z=check:{}", "--name", 'r={"pairs":[["check:{}","{0:1}"]]}')
    assert out["value"] == ["{0:1}"]
    forced = run_json(
        "forcing", "forces", "--poset", "fin_partial:0:0,1", "--formula", "(in z r)",
        "--name", "z=check:{}", "--name", 'r={"pairs":[["check:{}","{0:1}"]]}',
        "--condition", "{0:1}")
    assert json.dumps(forced).count("true") >= 1


def test_homogeneity_reports():
    inj = run("forcing", "homog", "--poset", "fin_inj:0,1:0..3", "--group", "values")
    assert inj.returncode == 0
    assert "not weakly" not in inj.stdout
    fp = run("forcing", "homog", "--poset", "fin_partial:0,1:0,1", "--group", "values")
    assert fp.returncode == 0
    assert "not weakly homogeneous" in fp.stdout


def test_rs_generic_cohen():
    out = run_json("generic", "rs", "--poset", "cohen:2", "--dense", "domains:0..4")
    assert out["union"] == "{0:0,1:0,2:0,3:0,4:0}"
    assert out["meets_all"] is True
    r = run("generic", "rs", "--poset", "cohen:2", "--dense", "domains:0..4", "--horizon", "2")
    assert r.returncode == 1
    assert "horizon" in r.stderr


def test_mgeneric_reports_g_outside_model():
    out = run_json("generic", "mgeneric", "--model", str(DATA / "fin_partial_model.json"))
    assert out["all_met"] is True
    assert out["g_in_model"] is False
    assert out["union_map"] == "{0:0,1:1}"
    anti = run_json("generic", "mgeneric", "--model", str(DATA / "antichain_model.json"))
    assert anti["all_met"] is True
    assert anti["degenerate"] is True


@pytest.mark.parametrize("args", [
    ["hf", "vlevel", "3", "--list"],
    ["logic", "def", "--vlevel", "3"],
    ["order", "roalg", "--poset", "fin_partial:0,1:0,1"],
    ["forcing", "homog", "--poset", "fin_partial:0,1:0,1", "--group", "values"],
    ["generic", "witness", "--set", "{{},{{}},{{{}}},{{},{{}}}}"],
    ["generic", "mgeneric", "--model", str(DATA / "fin_partial_model.json")],
])
def test_json_output_is_deterministic(args):
    a = run("--json", *args)
    b = run("--json", *args)
    assert a.returncode == 0, a.stderr
    assert a.stdout == b.stdout
    json.loads(a.stdout)


def test_experiment_writes_artifacts(tmp_path):
    out = tmp_path / "out"
    r = run("--out", str(out), "experiment", "run", str(DATA / "experiment.json"))
    assert r.returncode == 0, r.stderr
    names = sorted(p.name for p in out.iterdir())
    assert "experiment.json" in names
    assert "p-poset.json" in names
    assert not any(n.endswith(".partial") for n in names)
    first = {n: (out / n).read_bytes() for n in names}
    out2 = tmp_path / "out2"
    assert run("--out", str(out2), "experiment", "run", str(DATA / "experiment.json")).returncode == 0
    assert {n: (out2 / n).read_bytes() for n in names} == first


def test_failed_run_writes_nothing(tmp_path):
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps({"steps": [
        {"label": "p", "op": "poset", "poset": "chain:2"},
        {"label": "w", "op": "witness", "set": "{"},
    ]}))
    out = tmp_path / "out"
    r = run("--out", str(out), "experiment", "run", str(cfg))
    assert r.returncode == 1
    assert not out.exists()

    r = run("--out", str(out), "order", "check", "--poset", "fin_partial:0")
    assert r.returncode == 1
    assert not out.exists()


def test_dangling_experiment_reference(tmp_path):
    cfg = tmp_path / "dangling.json"
    cfg.write_text(json.dumps({"steps": [{"label": "p", "op": "poset", "poset": "@zz"}]}))
    r = run("experiment", "run", str(cfg))
    assert r.returncode == 1
    assert "zz" in r.stderr
