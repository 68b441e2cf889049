import json
import math
import subprocess
import sys
from pathlib import Path

import pytest

from neardist import IntervalFamily, PointSet
from neardist.fileio import (
    InputFormatError,
    UnsupportedDimensionError,
    load_intervals,
    load_point_set,
    save_intervals,
    save_point_set,
)


def run_cli(*args, cwd):
    return subprocess.run(
        [sys.executable, "-m", "neardist", *map(str, args)],
        cwd=cwd,
        capture_output=True,
        text=True,
    )


class TestFileIO:
    def test_point_set_json_round_trip_bit_exact(self, tmp_path):
        ps = PointSet([(0.1, -2.7182818284590455), (1e-17, 12345.6789)])
        path = tmp_path / "pts.json"
        save_point_set(ps, path)
        back = load_point_set(path)
        assert (back.coords == ps.coords).all()

    def test_point_set_csv_round_trip_bit_exact(self, tmp_path):
        ps = PointSet([(math.pi, -math.e), (1 / 3, 2**-40)])
        path = tmp_path / "pts.csv"
        save_point_set(ps, path)
        back = load_point_set(path)
        assert (back.coords == ps.coords).all()

    def test_intervals_round_trip(self, tmp_path):
        iv = IntervalFamily([1.0, 2.5, 100.125], 0.1)
        path = tmp_path / "iv.json"
        save_intervals(iv, path)
        back = load_intervals(path)
        assert back.t == iv.t and back.alpha == iv.alpha

    def test_dimension_three_rejected(self, tmp_path):
        path = tmp_path / "pts.json"
        path.write_text('{"dim": 3, "points": [[1, 2, 3]]}')
        with pytest.raises(UnsupportedDimensionError):
            load_point_set(path)

    def test_empty_points_rejected(self, tmp_path):
        path = tmp_path / "pts.json"
        path.write_text('{"dim": 2, "points": []}')
        with pytest.raises(InputFormatError):
            load_point_set(path)

    def test_empty_intervals_rejected(self, tmp_path):
        path = tmp_path / "iv.json"
        path.write_text('{"alpha": 1.0, "t": []}')
        with pytest.raises(InputFormatError):
            load_intervals(path)

    def test_malformed_json_rejected(self, tmp_path):
        path = tmp_path / "pts.json"
        path.write_text("{nope")
        with pytest.raises(InputFormatError):
            load_point_set(path)

    def test_bad_csv_rejected(self, tmp_path):
        path = tmp_path / "pts.csv"
        path.write_text("1.0,2.0\n3.0\n")
        with pytest.raises(InputFormatError):
            load_point_set(path)


class TestPipeline:
    def test_generate_count_verify_within_bound(self, tmp_path):
        gen = run_cli(
            "--output-dir", "out", "generate", "two-column",
            "--n", 20, "--k", 2, "--t", 500, "--eps", 0.1, cwd=tmp_path,
        )
        assert gen.returncode == 0, gen.stderr
        sidecar = json.loads((tmp_path / "out/construction.json").read_text())
        assert sidecar["predicted_count"] == 118
        assert sidecar["name"] == "two-column"

        cnt = run_cli(
            "--output-dir", "cnt", "count", "out/points.json", "out/intervals.json",
            cwd=tmp_path,
        )
        assert cnt.returncode == 0
        assert "n=20 total=118 method=brute" in cnt.stdout
        report = json.loads((tmp_path / "cnt/count.json").read_text())
        assert report == {"total": 118, "per_interval": [18, 100], "method": "brute"}

        ver = run_cli(
            "--output-dir", "ver", "verify", "out/points.json", "out/intervals.json",
            "--delta", 0.2, "--C", 2, cwd=tmp_path,
        )
        assert ver.returncode == 0
        verdict = json.loads((tmp_path / "ver/verify.json").read_text())
        assert verdict["within_bound"] and verdict["hypothesis"]["holds"]
        assert verdict["count"]["total"] == 118
        assert verdict["diameter"] == math.sqrt(500**2 + 81)

    def test_verify_exit_one_on_exceeded_bound(self, tmp_path):
        gen = run_cli(
            "--output-dir", "out", "generate", "remark2",
            "--n", 30, "--t1", 2000, "--t2", 2000, cwd=tmp_path,
        )
        assert gen.returncode == 0, gen.stderr
        ver = run_cli(
            "--output-dir", "ver", "verify", "out/points.json", "out/intervals.json",
            "--delta", 0.2, "--C", 2, cwd=tmp_path,
        )
        assert ver.returncode == 1
        verdict = json.loads((tmp_path / "ver/verify.json").read_text())
        assert not verdict["within_bound"]
        assert not verdict["hypothesis"]["holds"]

    def test_check_hypothesis_exit_codes(self, tmp_path):
        good = tmp_path / "good.json"
        good.write_text('{"alpha": 1.0, "t": [1.0, 5.0, 25.0]}')
        bad = tmp_path / "bad.json"
        bad.write_text('{"alpha": 1.0, "t": [10.0, 20.0, 30.0]}')
        assert run_cli("check-hypothesis", "good.json", "--delta", 0.2, cwd=tmp_path).returncode == 0
        assert run_cli("check-hypothesis", "bad.json", "--delta", 0.2, cwd=tmp_path).returncode == 1

    def test_malformed_input_exit_two(self, tmp_path):
        (tmp_path / "bad.json").write_text("{nope")
        (tmp_path / "iv.json").write_text('{"alpha": 1.0, "t": [1.0]}')
        res = run_cli("count", "bad.json", "iv.json", cwd=tmp_path)
        assert res.returncode == 2

    def test_empty_intervals_exit_two(self, tmp_path):
        (tmp_path / "pts.json").write_text('{"dim": 2, "points": [[0, 0], [5, 0]]}')
        (tmp_path / "iv.json").write_text('{"alpha": 1.0, "t": []}')
        res = run_cli("count", "pts.json", "iv.json", cwd=tmp_path)
        assert res.returncode == 2

    def test_invalid_construction_params_exit_two(self, tmp_path):
        res = run_cli(
            "generate", "two-column", "--n", 20, "--k", 2, "--t", 10, "--eps", 0.1,
            cwd=tmp_path,
        )
        assert res.returncode == 2
        assert "needs t >=" in res.stderr

    def test_dimension_exit_three(self, tmp_path):
        (tmp_path / "p3.json").write_text('{"dim": 3, "points": [[1, 2, 3], [4, 5, 6]]}')
        res = run_cli("diameter", "p3.json", cwd=tmp_path)
        assert res.returncode == 3

    def test_delta_out_of_range_exit_two(self, tmp_path):
        (tmp_path / "pts.json").write_text('{"dim": 2, "points": [[0, 0], [5, 0]]}')
        (tmp_path / "iv.json").write_text('{"alpha": 1.0, "t": [5.0]}')
        res = run_cli(
            "verify", "pts.json", "iv.json", "--delta", 1.5, "--C", 1, cwd=tmp_path
        )
        assert res.returncode == 2

    def test_count_methods_identical_bodies(self, tmp_path):
        run_cli(
            "--output-dir", "out", "generate", "two-column",
            "--n", 16, "--k", 2, "--t", 400, "--eps", 0.1, cwd=tmp_path,
        )
        run_cli("--output-dir", "b", "count", "out/points.json", "out/intervals.json",
                "--method", "brute", cwd=tmp_path)
        run_cli("--output-dir", "p", "count", "out/points.json", "out/intervals.json",
                "--method", "pruned", cwd=tmp_path)
        brute = json.loads((tmp_path / "b/count.json").read_text())
        pruned = json.loads((tmp_path / "p/count.json").read_text())
        assert brute.pop("method") == "brute"
        assert pruned.pop("method") == "pruned"
        assert brute == pruned


class TestGenerateRandom:
    def test_reproducible(self, tmp_path):
        for out in ("a", "b"):
            res = run_cli(
                "--output-dir", out, "generate", "random",
                "--n", 100, "--box", 40, "--seed", 7, cwd=tmp_path,
            )
            assert res.returncode == 0, res.stderr
        a = (tmp_path / "a/points.json").read_bytes()
        b = (tmp_path / "b/points.json").read_bytes()
        assert a == b
        ps = load_point_set(tmp_path / "a/points.json")
        assert ps.n == 100

    def test_csv_format(self, tmp_path):
        res = run_cli(
            "--output-dir", "c", "--format", "csv", "generate", "random",
            "--n", 9, "--box", 6, "--seed", 1, cwd=tmp_path,
        )
        assert res.returncode == 0, res.stderr
        ps = load_point_set(tmp_path / "c/points.csv")
        assert ps.n == 9


class TestManifests:
    def test_manifest_written_with_expected_fields(self, tmp_path):
        run_cli(
            "--output-dir", "out", "generate", "emp1",
            "--n", 30, "--k", 2, "--t", 2000, cwd=tmp_path,
        )
        manifest = json.loads((tmp_path / "out/manifest.json").read_text())
        assert set(manifest) == {
            "command", "params", "input_paths", "output_paths", "seed", "tool_version",
        }
        assert manifest["command"] == "generate"
        assert manifest["output_paths"] == [
            "points.json", "intervals.json", "construction.json",
        ]

    def test_rerun_is_byte_identical(self, tmp_path):
        args = ["generate", "problem3", "--n", 30, "--k", 3, "--t", 2000]
        run_cli("--output-dir", "a", *args, cwd=tmp_path)
        run_cli("--output-dir", "b", *args, cwd=tmp_path)
        for name in ("points.json", "intervals.json", "construction.json", "manifest.json"):
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()

    def test_search_rerun_byte_identical(self, tmp_path):
        (tmp_path / "iv.json").write_text('{"alpha": 1.0, "t": [5.0]}')
        args = ["search", "--intervals", "iv.json", "--n", 6,
                "--iterations", 300, "--seed", 11]
        for out in ("a", "b"):
            res = run_cli("--output-dir", out, *args, cwd=tmp_path)
            assert res.returncode == 0, res.stderr
        for name in ("best_points.json", "search.json", "trajectory.csv", "manifest.json"):
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


class TestSearchCommand:
    def test_zero_iterations_returns_initial(self, tmp_path):
        (tmp_path / "init.json").write_text(
            '{"dim": 2, "points": [[0.0, 0.0], [0.0, 5.5], [20.0, 0.0]]}'
        )
        (tmp_path / "iv.json").write_text('{"alpha": 1.0, "t": [5.0]}')
        res = run_cli(
            "--output-dir", "out", "search", "--intervals", "iv.json",
            "--n", 3, "--iterations", 0, "--initial", "init.json", cwd=tmp_path,
        )
        assert res.returncode == 0, res.stderr
        best = json.loads((tmp_path / "out/best_points.json").read_text())
        assert best["points"] == [[0.0, 0.0], [0.0, 5.5], [20.0, 0.0]]
        summary = json.loads((tmp_path / "out/search.json").read_text())
        assert summary["best_count"] == 1
        traj = (tmp_path / "out/trajectory.csv").read_text().splitlines()
        assert traj[0] == "iteration,count"
        assert traj[1] == "0,1"

    def test_config_file(self, tmp_path):
        (tmp_path / "cfg.json").write_text(json.dumps({
            "n": 5, "iterations": 200, "seed": 3, "restarts": 2,
            "intervals": {"alpha": 1.0, "t": [4.0]},
        }))
        res = run_cli("--output-dir", "out", "search", "--config", "cfg.json", cwd=tmp_path)
        assert res.returncode == 0, res.stderr
        summary = json.loads((tmp_path / "out/search.json").read_text())
        assert summary["restarts"] == 2 and summary["seed"] == 3

    def test_missing_flags_exit_two(self, tmp_path):
        res = run_cli("search", "--n", 5, cwd=tmp_path)
        assert res.returncode == 2


class TestAnalyzeCommand:
    def test_witness_found_on_chain(self, tmp_path):
        run_cli(
            "--output-dir", "out", "generate", "problem3",
            "--n", 30, "--k", 3, "--t", 2000, cwd=tmp_path,
        )
        res = run_cli(
            "--output-dir", "ana", "analyze", "out/points.json", "out/intervals.json",
            "--s", 2, "--m", 2, "--delta", 0.1, cwd=tmp_path,
        )
        assert res.returncode == 0, res.stderr
        payload = json.loads((tmp_path / "ana/analysis.json").read_text())
        witness = payload["witness"]
        assert witness is not None
        assert {"x", "B", "D", "B2", "D2", "labels"} <= set(witness)
        assert payload["edges"] == 351

    def test_no_witness_on_sparse_input(self, tmp_path):
        (tmp_path / "pts.json").write_text(
            '{"dim": 2, "points": [[0, 0], [100, 0], [203, 9]]}'
        )
        (tmp_path / "iv.json").write_text('{"alpha": 1.0, "t": [5.0]}')
        res = run_cli(
            "--output-dir", "ana", "analyze", "pts.json", "iv.json", "--s", 3,
            cwd=tmp_path,
        )
        assert res.returncode == 0, res.stderr
        payload = json.loads((tmp_path / "ana/analysis.json").read_text())
        assert payload["witness"] is None
        assert "witness=none" in res.stdout


class TestDiameterCommand:
    def test_reports_value(self, tmp_path):
        (tmp_path / "pts.json").write_text(
            '{"dim": 2, "points": [[0, 0], [3, 4]]}'
        )
        res = run_cli("--output-dir", "out", "diameter", "pts.json", cwd=tmp_path)
        assert res.returncode == 0
        assert "diameter=5.0" in res.stdout
        payload = json.loads((tmp_path / "out/diameter.json").read_text())
        assert payload == {"n": 2, "diameter": 5.0}
