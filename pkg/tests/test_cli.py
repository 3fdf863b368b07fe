import csv
import json

import pytest

from bigonlab.cli import run


def _run_json(capsys, argv):
    code = run(argv)
    out = capsys.readouterr()
    assert code == 0, out.err
    return json.loads(out.out)


CONSTANTS_ARGS = ["constants", "--Y", "1", "--theta", "1/2", "--Z", "1",
                  "--lambda", "1/2", "--nu", "3/4"]


def test_constants_payload(capsys):
    rep = _run_json(capsys, CONSTANTS_ARGS)
    r = rep["results"]
    assert (r["D"], r["rho"], r["R"]) == ("9", "1/40", "25")
    assert r["epsilon"] == "1/12" and r["C"] == "overflow"
    assert rep["certified"] and not rep["truncated"]
    assert rep["parameters"]["theta"] == "1/2"


def test_ball_payload(capsys):
    rep = _run_json(capsys, ["ball", "--preset", "f2", "--radius", "2"])
    r = rep["results"]
    assert r["vertex_count"] == 17 and r["edge_count"] == 16
    assert r["sphere_sizes"] == [1, 4, 12]
    assert r["strategy"] == "FreeReduction"


STATS_ARGS = ["stats", "--preset", "z2", "--radius", "12", "--core-radius",
              "4", "--length-cap", "4", "--Y", "1", "--Z", "1"]


def test_stats_payload_and_csv(capsys, tmp_path):
    out = tmp_path / "curve.csv"
    rep = _run_json(capsys, STATS_ARGS + ["--out", str(out)])
    r = rep["results"]
    assert r["count"] == 1474 and r["theta_hat"] == "3/4"
    assert r["condition_a"] and not r["condition_b"]
    assert r["by_length"] == {"2": 64, "3": 288, "4": 1122}
    with open(out, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["x", "sup_ratio_num", "sup_ratio_den", "witness"]
    assert len(rows) == 1 + len(r["tas_curve"])
    assert rows[1][1:3] == ["3", "4"]


def test_stats_jobs_deterministic(capsys):
    rep1 = _run_json(capsys, STATS_ARGS + ["--jobs", "1"])
    rep4 = _run_json(capsys, STATS_ARGS + ["--jobs", "4"])
    for rep in (rep1, rep4):
        del rep["timing"]
        rep["parameters"].pop("jobs")
    assert rep1 == rep4


def test_area_exact_and_exhausted(capsys):
    rep = _run_json(capsys, ["area", "--preset", "z2", "--word", "abAB",
                             "--length-cap-area", "8", "--area-cap", "8"])
    assert rep["results"]["area"] == 1 and rep["certified"]
    rep = _run_json(capsys, ["area", "--preset", "f2", "--word", "ab",
                             "--length-cap-area", "8", "--area-cap", "8"])
    assert rep["results"]["status"] == "exhausted"
    assert not rep["certified"] and rep["truncated"]


def test_bigons_free_group(capsys):
    rep = _run_json(capsys, ["bigons", "--preset", "f2", "--radius", "6",
                             "--length-cap", "4"])
    assert rep["results"]["count"] == 0 and rep["certified"]


def test_gaps_not_applicable(capsys):
    rep = _run_json(capsys, ["gaps", "--preset", "z2", "--radius", "9",
                             "--length-cap", "4"] + CONSTANTS_ARGS[1:])
    r = rep["results"]
    assert not r["applicable"] and r["gap_leq_C"] is None
    assert r["R"] == "25"


def test_graph_commands(capsys, tmp_path):
    g = tmp_path / "square.txt"
    g.write_text("0 1\n1 2\n2 3\n3 0\n")
    rep = _run_json(capsys, ["delta", "--graph", str(g), "--base", "0"])
    assert rep["results"]["delta"] == "1"
    rep = _run_json(capsys, ["ball", "--graph", str(g), "--base", "0"])
    assert rep["results"]["kind"] == "graph"
    assert rep["results"]["vertex_count"] == 4


@pytest.mark.parametrize("argv", [
    CONSTANTS_ARGS[:2] + ["2"] + CONSTANTS_ARGS[4:],  # theta out of range
    ["ball", "--preset", "f2", "--radius", "2", "--bogus"],
    ["stats", "--preset", "z2", "--radius", "9"],  # missing --length-cap
    ["ratio", "--graph", "nowhere.txt", "--base", "0", "--length-cap", "4",
     "--length-cap-area", "8", "--area-cap", "8"],  # graph has no relators
    ["ball", "--presentation", "no-such-file.txt", "--radius", "2"],
])
def test_usage_errors_exit_2(capsys, argv):
    assert run(argv) == 2
    capsys.readouterr()


def test_refusal_exit_1(capsys):
    # length cap beyond the trusted window of a radius-9 ball (core 3)
    code = run(["stats", "--preset", "z2", "--radius", "9",
                "--length-cap", "7"])
    err = capsys.readouterr().err
    assert code == 1 and err.startswith("refused:")


def test_ratio_table(capsys):
    rep = _run_json(capsys, ["ratio", "--preset", "z2", "--radius", "9",
                             "--length-cap", "2", "--length-cap-area", "8",
                             "--area-cap", "8"])
    r = rep["results"]
    assert r["max_per_length"] == [[2, "1/2"]]
    assert r["rows"] == [[2, 1, "1/2"]] * 4  # one corner bigon per quadrant
    assert r["max_ratio"] == "1/2" and r["excluded"] == 0
