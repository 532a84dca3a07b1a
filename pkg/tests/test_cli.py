import csv
import json

import pytest

import cli
import verification
from families import formulas


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


SQUARE = {"complex": {"facets": [[0, 1], [1, 2], [2, 3], [0, 3]]}}


class TestProb:

    def test_cycle_exact(self, capsys):
        code, out, _ = run(capsys, "prob", "--family", "cycle:4", "--engine", "exact")
        assert code == 0
        report = json.loads(out)
        assert report["p"] == "47/256"
        assert report["p_decimal"] == "0.18359375"

    def test_star_brute(self, capsys):
        code, out, _ = run(capsys, "prob", "--family", "star:3", "--engine", "brute")
        assert code == 0
        assert json.loads(out)["p"] == "5/16"

    def test_empty_graph(self, capsys, write_file):
        path = write_file("empty.json", '{"n_vertices": 3, "edges": []}')
        code, out, _ = run(capsys, "prob", "--input", str(path))
        report = json.loads(out)
        assert code == 0
        assert report["p"] == "1/1"
        assert report["h"] == 0.0

    def test_edge_list_error(self, capsys, write_file):
        path = write_file("bad.txt", "0 1\n1 2 3\n")
        code, _, err = run(capsys, "prob", "--input", str(path))
        assert code == 2
        assert json.loads(err)["line"] == 2

    def test_size_limit(self, capsys):
        code, _, err = run(capsys, "prob", "--family", "complete:5", "--engine", "brute", "--limit", "1000")
        assert code == 3
        assert json.loads(err)["error"] == "SizeLimitError"

    def test_mc_needs_seed(self, capsys):
        code, _, _ = run(capsys, "prob", "--family", "path:1", "--engine", "mc")
        assert code == 2

    def test_mc(self, capsys):
        code, out, _ = run(capsys, "prob", "--family", "path:1", "--engine", "mc", "--seed", "3",
                           "--samples", "5000")
        report = json.loads(out)
        assert code == 0
        assert report["samples"] == 5000 and report["seed"] == 3

    def test_needs_one_source(self, capsys):
        code, _, _ = run(capsys, "prob")
        assert code == 2

    def test_csv_output(self, capsys, tmp_path):
        out_path = tmp_path / "prob.csv"
        code, _, _ = run(capsys, "prob", "--family", "cycle:3", "--format", "csv", "--output", str(out_path))
        assert code == 0
        row = next(csv.DictReader(out_path.open()))
        assert row["p"] == "9/32"


class TestFlow:

    def test_check_acyclic_flow(self, capsys, write_file):
        path = write_file("p.json", json.dumps({**SQUARE, "signs": [1, -1, 1, 1, 1, -1, 1, -1]}))
        code, out, _ = run(capsys, "flow", "check", "--input", str(path))
        report = json.loads(out)
        assert code == 0
        assert report["is_flow"] and report["is_acyclic"]
        assert report["critical"] == [[0], [0, 3]]

    def test_check_non_flow(self, capsys, write_file):
        path = write_file("p.json", json.dumps({**SQUARE, "signs": [-1, 1, -1, 1, 1, 1, 1, 1]}))
        code, out, _ = run(capsys, "flow", "check", "--input", str(path))
        assert code == 0
        assert json.loads(out)["is_flow"] is False

    def test_deform_non_flow(self, capsys, write_file):
        path = write_file("p.json", json.dumps({**SQUARE, "signs": [-1, 1, -1, 1, 1, 1, 1, 1]}))
        code, _, err = run(capsys, "flow", "deform", "--input", str(path))
        assert code == 2
        assert "combinatorial flow" in json.loads(err)["message"]

    def test_deform_triangle(self, capsys, write_file):
        path = write_file("p.json", json.dumps({"family": "path:1", "signs": [-1, 1, 1, -1, -1, 1]}))
        code, out, _ = run(capsys, "flow", "deform", "--input", str(path), "--family", "cycle:3")
        report = json.loads(out)
        assert code == 0
        assert report["iterations"] == 1
        assert report["is_acyclic"]
        assert report["flips"][0]["upper"] == [0, 1] and report["flips"][0]["lower"] == [0]

    def test_morse(self, capsys, write_file):
        path = write_file("p.json", json.dumps({**SQUARE, "signs": [1, -1, 1, 1, 1, -1, 1, -1]}))
        code, out, _ = run(capsys, "flow", "morse", "--input", str(path))
        report = json.loads(out)
        assert code == 0
        assert report["round_trip"]
        assert len(report["values"]) == 8

    def test_malformed_prescription(self, capsys, write_file):
        path = write_file("p.json", '{"signs": [1, 1]}')
        code, _, _ = run(capsys, "flow", "check", "--input", str(path))
        assert code == 2


class TestVerify:

    def test_injected_checks_pass(self, capsys, monkeypatch):
        monkeypatch.setattr(verification, "DEFAULT_CHECKS", {
            "single_edge": verification.check_single_edge,
            "cycles": verification.check_cycles,
        })
        code, out, _ = run(capsys, "verify")
        report = json.loads(out)
        assert code == 0
        assert report["passed"]
        assert [c["check"] for c in report["checks"]] == ["single_edge", "cycles"]

    def test_tampered_coefficient_fails(self, capsys, monkeypatch):
        monkeypatch.setitem(formulas._complete_cache, 3, (1, 2, 3, 3))
        monkeypatch.setattr(verification, "DEFAULT_CHECKS", {"complete": verification.check_complete})
        code, out, _ = run(capsys, "verify")
        report = json.loads(out)
        assert code == 1
        failure = report["checks"][0]
        assert not failure["passed"]
        assert failure["expected"] == "(1, 2, 3, 2)"

    @pytest.mark.slow
    def test_default_level(self, capsys):
        code, out, _ = run(capsys, "verify")
        assert code == 0, out


class TestExperiment:

    def test_threshold_csv_with_json_mirror(self, capsys, tmp_path):
        out_path = tmp_path / "scan.csv"
        code, _, _ = run(capsys, "experiment", "threshold", "--x", "-0.6", "--n", "5", "--N-grid", "0,5,10",
                         "--samples-per-cell", "3", "--seed", "1", "--format", "csv", "--output", str(out_path))
        assert code == 0
        rows = list(csv.DictReader(out_path.open()))
        assert list(rows[0]) == cli.EXPERIMENT_COLUMNS
        assert [row["N_or_p"] for row in rows] == ["0", "5", "10"]
        mirror = json.loads(out_path.with_suffix(".json").read_text())
        assert mirror["config"]["seed"] == 1
        assert "created_at" in mirror

    def test_threshold_needs_seed(self, capsys):
        code, _, _ = run(capsys, "experiment", "threshold", "--n", "5")
        assert code == 2

    def test_threshold_x_range(self, capsys):
        code, _, _ = run(capsys, "experiment", "threshold", "--x", "-0.1", "--seed", "1")
        assert code == 2

    def test_trees(self, capsys):
        code, out, _ = run(capsys, "experiment", "trees", "--n", "4")
        trend = json.loads(out)["result"]["trend"]
        assert code == 0
        assert trend[0]["trees_scanned"] == 125

    def test_convexity(self, capsys):
        code, out, _ = run(capsys, "experiment", "convexity", "--family", "cycle:3", "--family2", "star:2")
        assert code == 0
        assert json.loads(out)["result"]["convex_holds"]

    def test_gnp(self, capsys):
        code, out, _ = run(capsys, "experiment", "gnp", "--n", "5", "--ps", "0.3,0.7",
                           "--samples-per-cell", "4", "--seed", "2")
        cells = json.loads(out)["result"]["cells"]
        assert code == 0
        assert [c["p"] for c in cells] == [0.3, 0.7]


def test_table(capsys):
    code, out, _ = run(capsys, "table", "--n-max", "3", "--format", "csv")
    rows = list(csv.DictReader(out.splitlines()))
    assert code == 0
    assert rows[0]["family"] == "path" and rows[0]["P_num"] == "3" and rows[0]["P_den"] == "4"
