import json
import subprocess
import sys
from pathlib import Path

import pytest

from sigmatrop.cli import canonical_json, main, run, SchemaError

TROP_JOB = {
    "version": 1,
    "command": "trop",
    "payload": {
        "rank": 2,
        "generators": [{"terms": [{"exp": [1, 0], "coef": 1},
                                  {"exp": [0, 1], "coef": 1},
                                  {"exp": [0, 0], "coef": 1}]}],
        "valuation": {"kind": "trivial"},
    },
}

SIGMA_JOB = {
    "version": 1,
    "command": "sigma",
    "payload": {"module": {"mode": "scalar", "rhos": ["6"]}},
}

GROUP_JOB = {
    "version": 1,
    "command": "group",
    "payload": {"module": {"mode": "scalar", "rhos": ["6"]}, "fpm": [2, 3]},
}

DYN_JOB = {
    "version": 1,
    "command": "dyn",
    "payload": {
        "rank": 2,
        "matrix": [[{"terms": [{"exp": [1, 0], "coef": 1},
                               {"exp": [0, 1], "coef": 1}]}]],
        "chi": ["1", "1"],
        "iters": 6,
    },
}

H2_JOB = {
    "version": 1,
    "command": "h2",
    "payload": {
        "p": 2,
        "support_at_zero": {"k": 0, "j_max": 4},
        "push": {},
        "zero_obstruction": {"q": 4, "coeff_bound": 4, "size_bound": 2},
    },
}

AMOEBA_JOB = {
    "version": 1,
    "command": "amoeba",
    "payload": {
        "poly": {"terms": [{"exp": [0, 1], "coef": 1},
                           {"exp": [1, 0], "coef": -1}]},
        "s_grid": [-16.0, -8.0, 8.0, 16.0],
        "angles": 6,
        "min_radius": 10.0,
        "angle_bins": 36,
    },
}


def test_trop_job():
    doc = run(TROP_JOB)
    assert doc["result"]["fan"]["spherical_rays"] == [[-1, -1], [0, 1], [1, 0]]
    assert doc["result"]["kind"] == "hypersurface"
    assert not doc["undecided"]


def test_sigma_job():
    doc = run(SIGMA_JOB)
    res = doc["result"]
    assert res["proved_complement"]["directions"] == [[1]]
    assert res["certificates"], "expected at least one certificate"
    assert not doc["undecided"]


def test_group_job():
    doc = run(GROUP_JOB)
    res = doc["result"]
    assert res["finitely_presented"] is True
    assert res["fp_infinity"] is True
    assert res["fpm"]["2"] == {"value": True, "basis": "theorem"}
    assert res["fpm"]["3"]["basis"] == "conjecture"


def test_dyn_job():
    doc = run(DYN_JOB)
    res = doc["result"]
    assert res["gsh"] == "1"
    assert res["compose_check"]["passed"]
    assert res["angle_bound"]["passed"]


def test_h2_job():
    doc = run(H2_JOB)
    res = doc["result"]
    assert res["support_at_zero"]["passed"]
    assert res["push"]["passed"] and res["push"]["shift_arg_ratio"] == "4"
    assert res["zero_obstruction"]["passed"]


def test_amoeba_job_and_threads_determinism():
    doc1 = run(AMOEBA_JOB, threads=1)
    doc8 = run(AMOEBA_JOB, threads=8)
    assert canonical_json(doc1) == canonical_json(doc8)
    dirs = doc1["result"]["limit_directions"]["directions"]
    assert dirs, "expected far directions for the diagonal curve"


def test_unknown_command_schema_error():
    bad = {"version": 1, "command": "mystery", "payload": {}}
    with pytest.raises(SchemaError):
        run(bad)


def test_unknown_field_rejected():
    bad = json.loads(json.dumps(TROP_JOB))
    bad["payload"]["surprise"] = 1
    with pytest.raises(SchemaError):
        run(bad)


def test_canonical_json_round_trip():
    doc = run(TROP_JOB)
    text = canonical_json(doc)
    assert text == canonical_json(json.loads(text))
    assert text.endswith("\n")


def test_main_end_to_end(tmp_path):
    job_file = tmp_path / "job.json"
    out_file = tmp_path / "out.json"
    plot_dir = tmp_path / "plots"
    job_file.write_text(json.dumps(TROP_JOB))
    code = main(["--job", str(job_file), "--out", str(out_file),
                 "--plot", str(plot_dir)])
    assert code == 0
    doc = json.loads(out_file.read_text())
    assert doc["result"]["fan"]["spherical_rays"] == [[-1, -1], [0, 1], [1, 0]]
    rays_csv = (plot_dir / "rays.csv").read_text().splitlines()
    assert rays_csv[0] == "dir_x,dir_y"
    assert len(rays_csv) == 4


def test_main_exit_codes(tmp_path):
    bad_file = tmp_path / "bad.json"
    bad_file.write_text(json.dumps({"version": 1, "command": "nope",
                                    "payload": {}}))
    assert main(["--job", str(bad_file)]) == 3

    undecided_job = {
        "version": 1,
        "command": "sigma",
        "payload": {"module": {
            "mode": "matrix",
            "mats": [[["2", "1"], ["0", "2"]]],
            "generators": [["1", "0"], ["0", "1"]],
        }},
    }
    ufile = tmp_path / "u.json"
    ufile.write_text(json.dumps(undecided_job))
    assert main(["--job", str(ufile), "--out", str(tmp_path / "u_out.json")]) == 2

    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    assert main(["--job", str(broken)]) == 1


def test_amoeba_plot_csv(tmp_path):
    job_file = tmp_path / "job.json"
    job_file.write_text(json.dumps(AMOEBA_JOB))
    code = main(["--job", str(job_file), "--out", str(tmp_path / "o.json"),
                 "--plot", str(tmp_path / "plots")])
    assert code == 0
    lines = (tmp_path / "plots" / "cloud.csv").read_text().splitlines()
    assert lines[0] == "s,ln_abs_y"
    assert len(lines) > 1


def test_console_script_runs(tmp_path):
    job_file = tmp_path / "job.json"
    job_file.write_text(json.dumps(SIGMA_JOB))
    proc = subprocess.run(
        [sys.executable, "-m", "sigmatrop.cli", "--job", str(job_file)],
        capture_output=True, text=True)
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    assert doc["result"]["proved_complement"]["directions"] == [[1]]


def test_byte_identical_reruns():
    jobs = [TROP_JOB, SIGMA_JOB, GROUP_JOB, DYN_JOB, H2_JOB, AMOEBA_JOB]
    first = [canonical_json(run(j, threads=1)) for j in jobs]
    second = [canonical_json(run(j, threads=8)) for j in jobs]
    assert first == second


def test_plot_rank_guard(tmp_path):
    from sigmatrop.cli import emit_plot_data
    from sigmatrop.polyhedra import Polyhedron, PolyhedralSet

    fan4 = PolyhedralSet(4, [Polyhedron.cone(4, ge=[(1, 0, 0, 0)])])
    with pytest.raises(ValueError):
        emit_plot_data("fan", fan4, tmp_path / "plots")


def test_trop_padic_and_table_valuations():
    padic_job = {
        "version": 1,
        "command": "trop",
        "payload": {
            "rank": 1,
            "generators": [{"terms": [{"exp": [1], "coef": 1},
                                      {"exp": [0], "coef": -6}]}],
            "valuation": {"kind": "p-adic", "p": 2},
        },
    }
    doc = run(padic_job)
    pieces = doc["result"]["fan"]["pieces"]
    assert pieces == [{"eq": [{"normal": [1], "rhs": 1}], "ge": [], "gt": [],
                       "empty": False}]

    table_job = json.loads(json.dumps(padic_job))
    table_job["payload"]["valuation"] = {
        "kind": "table",
        "entries": [{"value": "2", "val": "1"}, {"value": "3", "val": "0"},
                    {"value": "0", "val": "inf"}],
    }
    doc2 = run(table_job)
    assert doc2["result"]["fan"]["pieces"] == pieces

    global_job = json.loads(json.dumps(padic_job))
    global_job["payload"]["valuation"] = {"kind": "global-z"}
    doc3 = run(global_job)
    assert len(doc3["result"]["fan"]["pieces"]) == 2  # the origin and the shift
