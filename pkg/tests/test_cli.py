import json
import math
import subprocess
import sys

import pytest

from regulab import cli
from regulab.suites import SUITES, run_suite

SMALL = {
    "identities": {"counts": {"cross_det": 5, "cyclic_det": 3, "five_term": 5, "chain_map_45": 2, "chain_map_56": 1, "residue": 3}},
    "polylog": {"points": 3, "five_term_tuples": 3, "differential_points": 1, "weights": [3]},
    "ek-sum": {"radius": 6},
    "green": {"radii": [10, 20], "grid": 16, "variance_tolerance": 1.0},
    "regulator": {"mesh": 16, "radius": 30, "route_radius": 6, "tolerance": 1.0},
    "deninger-rhs": {"radius": 6, "data": []},
}


def write(tmp_path, obj, name="d.json"):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


def test_list_six_suites_stable(capsys):
    assert cli.main(["list"]) == 0
    first = capsys.readouterr().out
    assert cli.main(["list"]) == 0
    assert capsys.readouterr().out == first
    names = [line.split()[0] for line in first.strip().splitlines()]
    assert names == ["identities", "polylog", "ek-sum", "green", "regulator", "deninger-rhs"]


@pytest.mark.parametrize("kind", list(SUITES))
def test_each_listed_suite_runs(kind, tmp_path):
    out = tmp_path / "r.json"
    path = write(tmp_path, {"kind": kind, "seed": 1, "params": SMALL[kind], "output": str(out)})
    report, code = cli.run(path)
    assert code in (0, 1)
    assert report["suite"] == kind and report["records"]
    assert json.loads(out.read_text())["environment"]["seed"] == 1


def test_deninger_empty_data_is_zero(tmp_path, capsys):
    path = write(tmp_path, {"kind": "deninger-rhs", "params": {"data": []}})
    report, code = cli.run(path)
    assert code == 0
    assert report["records"][0]["values"]["value"] == [0.0, 0.0]
    assert json.loads(capsys.readouterr().out)["passed"] is True


def test_runtime_failure_exits_one(tmp_path):
    path = write(tmp_path, {"kind": "green", "params": {"radii": [10], "grid": 16, "variance_tolerance": 1e-15}})
    assert cli.main(["run", path, "-o", str(tmp_path / "o.json")]) == 1


@pytest.mark.parametrize(
    "bad",
    [
        {"kind": "green", "bogus": 1},
        {"kind": "green", "params": {"radii": [10], "typo": 2}},
        {"kind": "no-such-suite"},
        {"kind": "green", "precision": 8},
        {"kind": "ek-sum", "params": {"shift": ["1/x", "0"]}},
        {"seed": 3},
    ],
)
def test_schema_errors_exit_two(bad, tmp_path, capsys):
    assert cli.main(["run", write(tmp_path, bad)]) == 2
    assert "schema error" in capsys.readouterr().err


def test_unreadable_descriptor_exits_two(tmp_path):
    assert cli.main(["run", write(tmp_path, "{not json")]) == 2
    assert cli.main(["run", str(tmp_path / "missing.json")]) == 2


def test_integer_coordinates_accepted():
    assert cli.validate({"kind": "ek-sum", "params": {"shift": [0, "1/3"], "x": [[0, 0, 1], ["1/2", 0, -1]]}}) == []


def test_canonical_json_format():
    text = cli.canonical_json({"b": 0.1, "a": [1, 2.5], "c": {"z": None, "y": True}, "n": math.nan, "i": -math.inf})
    assert text.index('"a"') < text.index('"b"') < text.index('"c"')
    assert "0.10000000000000001" in text
    assert '"nan"' in text and '"-inf"' in text
    assert "[1, 2.5]" in text
    assert json.loads(text)["c"] == {"y": True, "z": None}


def test_canonical_json_rejects_unknown_types():
    with pytest.raises(TypeError):
        cli.canonical_json({"x": object()})


def test_reports_byte_identical_without_timing(tmp_path):
    d = {"kind": "polylog", "seed": 9, "params": SMALL["polylog"]}
    outs = []
    for i in range(2):
        out = tmp_path / f"{i}.json"
        cli.run(write(tmp_path, {**d, "output": str(out)}))
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]
    assert all(r["wall_time"] is None for r in json.loads(outs[0])["records"])


def test_record_timing_fills_wall_time(tmp_path):
    report, _ = cli.run(write(tmp_path, {"kind": "deninger-rhs", "record_timing": True, "output": str(tmp_path / "o.json")}))
    assert all(isinstance(r["wall_time"], float) for r in report["records"])


def test_seed_changes_random_instances(tmp_path):
    vals = []
    for seed in (1, 2):
        out = tmp_path / f"{seed}.json"
        cli.run(write(tmp_path, {"kind": "polylog", "seed": seed, "params": SMALL["polylog"], "output": str(out)}))
        vals.append(json.loads(out.read_text())["records"][4]["values"]["samples"][0]["residual"])
    assert vals[0] != vals[1]


def test_precision_environment_override(tmp_path):
    out = tmp_path / "o.json"
    path = write(tmp_path, {"kind": "deninger-rhs"})
    env = {"REGULAB_PRECISION": "200", "PATH": "/usr/bin:/bin"}
    proc = subprocess.run([sys.executable, "-m", "regulab.cli", "run", path, "-o", str(out)], env=env, capture_output=True)
    assert proc.returncode == 0, proc.stderr
    assert json.loads(out.read_text())["environment"]["precision"] == 200


def test_environment_block():
    report = run_suite("deninger-rhs", {}, 5, 96)
    env = report["environment"]
    assert env["prng"] == "python-mt19937/v1"
    assert env["seed"] == 5 and env["precision"] == 96
    assert env["kernel_backend"] in ("cython", "numpy")
