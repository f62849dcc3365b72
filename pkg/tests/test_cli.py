"""CLI harness: subcommands, files, exit codes, reproducibility."""
import json

import pytest

from hangon.cli import main


def run_cli(*argv) -> int:
    return main(list(argv))


class TestRunEraser:
    def test_writes_histogram_and_report(self, tmp_path, capsys):
        code = run_cli(
            "run", "eraser", "--bs", "--perspective", "idler-first",
            "--n", "5000", "--seed", "7", "--out-dir", str(tmp_path),
        )
        assert code == 0
        hist = (tmp_path / "eraser_hist.csv").read_text()
        assert hist.splitlines()[0] == (
            "bin_left,bin_right,count_D1,count_D2,count_D3,count_D4,count_total"
        )
        report = json.loads((tmp_path / "eraser_report.json").read_text())
        assert report["passed"] is True
        assert report["config"]["seed"] == 7
        assert sum(report["sampled"]["detector_counts"].values()) == 5000

    def test_same_seed_byte_identical_outputs(self, tmp_path):
        for sub in ("a", "b"):
            assert run_cli(
                "run", "eraser", "--no-bs", "--perspective", "signal-first",
                "--n", "2000", "--seed", "3", "--out-dir", str(tmp_path / sub),
            ) == 0
        for name in ("eraser_hist.csv", "eraser_report.json"):
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()

    def test_config_file_with_flag_override(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"n": 1000, "seed": 1, "bs_present": False}))
        code = run_cli(
            "run", "eraser", "--config", str(cfg), "--seed", "2",
            "--out-dir", str(tmp_path),
        )
        assert code == 0
        report = json.loads((tmp_path / "eraser_report.json").read_text())
        assert report["config"]["n"] == 1000  # from config
        assert report["config"]["seed"] == 2  # flag wins
        assert report["config"]["bs_present"] is False

    def test_config_echo_reproduces_the_run(self, tmp_path):
        # The echoed config alone must be enough to reproduce the run.
        first = tmp_path / "first"
        assert run_cli(
            "run", "eraser", "--no-bs", "--perspective", "signal-first",
            "--n", "1500", "--seed", "9", "--bins", "128", "--out-dir", str(first),
        ) == 0
        echoed = json.loads((first / "eraser_report.json").read_text())["config"]
        cfg = tmp_path / "echo.json"
        cfg.write_text(json.dumps(echoed))
        second = tmp_path / "second"
        assert run_cli("run", "eraser", "--config", str(cfg), "--out-dir", str(second)) == 0
        assert (first / "eraser_hist.csv").read_bytes() == (second / "eraser_hist.csv").read_bytes()
        assert (first / "eraser_report.json").read_bytes() == (second / "eraser_report.json").read_bytes()

    def test_config_for_wrong_scenario_rejected(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"scenario": "epr"}))
        assert run_cli("run", "eraser", "--config", str(cfg)) == 2


class TestRunEprAndPair:
    def test_epr_counts_json(self, tmp_path):
        code = run_cli(
            "run", "epr", "--order", "alice-first", "--n", "3000",
            "--seed", "1", "--out-dir", str(tmp_path),
        )
        assert code == 0
        counts = json.loads((tmp_path / "epr_counts.json").read_text())
        assert counts["++"] == 0 and counts["--"] == 0
        assert counts["+-"] + counts["-+"] == 3000

    def test_epr_counts_csv(self, tmp_path):
        code = run_cli(
            "run", "epr", "--order", "bob-record-first", "--n", "500",
            "--seed", "1", "--out", "csv", "--out-dir", str(tmp_path),
        )
        assert code == 0
        text = (tmp_path / "epr_counts.csv").read_text()
        assert text.splitlines()[0] == "outcome,count"

    def test_partial_pair_counts(self, tmp_path):
        code = run_cli("run", "eq9", "--n", "2000", "--seed", "3", "--out-dir", str(tmp_path))
        assert code == 0
        counts = json.loads((tmp_path / "eq9_counts.json").read_text())
        assert counts["Yb"] == 0
        assert sum(counts.values()) == 2000

    def test_double_slit(self, tmp_path):
        code = run_cli(
            "run", "double-slit", "--n", "20000", "--seed", "5",
            "--bins", "256", "--out-dir", str(tmp_path),
        )
        assert code == 0
        lines = (tmp_path / "double_slit_hist.csv").read_text().splitlines()
        assert lines[0] == "bin_left,bin_right,count"
        assert len(lines) == 257


class TestConfigErrors:
    def test_missing_config_file(self, tmp_path, capsys):
        code = run_cli("run", "eraser", "--config", str(tmp_path / "nope.json"))
        assert code == 2
        assert "config error" in capsys.readouterr().err

    def test_malformed_config_file(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        code = run_cli("run", "eraser", "--config", str(bad))
        assert code == 2
        err = capsys.readouterr().err
        assert "line" in err

    def test_bad_field_type(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"n": "many"}))
        code = run_cli("run", "eraser", "--config", str(cfg), "--out-dir", str(tmp_path))
        assert code == 2
        assert "'n'" in capsys.readouterr().err

    def test_unknown_flag_value(self, capsys):
        assert run_cli("run", "eraser", "--perspective", "sideways") == 2

    def test_unknown_scenario(self, capsys):
        assert run_cli("run", "teleporter") == 2


class TestVerify:
    def test_fast_suite_passes(self, tmp_path):
        report_path = tmp_path / "report.json"
        code = run_cli("verify", "fast", "--report", str(report_path))
        assert code == 0
        doc = json.loads(report_path.read_text())
        assert doc["passed"] is True
        assert {c["name"] for c in doc["checks"]} >= {
            "momentum_detectors",
            "eraser_uniformity",
            "no_signaling",
        }
        for check in doc["checks"]:
            assert check["invariant"]

    def test_fast_suite_byte_identical(self, tmp_path):
        paths = []
        for sub in ("a", "b"):
            p = tmp_path / f"{sub}.json"
            assert run_cli("verify", "fast", "--seed", "11", "--report", str(p)) == 0
            paths.append(p)
        assert paths[0].read_bytes() == paths[1].read_bytes()


class TestTrace:
    def test_needle_trace_and_ledger(self, tmp_path, capsys):
        out = tmp_path / "needle.jsonl"
        code = run_cli("trace", "needle", "--seed", "5", "--out", str(out))
        assert code == 0
        lines = out.read_text().splitlines()
        assert len(lines) == 3
        ledger_lines = (tmp_path / "needle.ledger.jsonl").read_text().splitlines()
        docs = [json.loads(l) for l in ledger_lines]
        needle = next(d for d in docs if d["subsystem"] == "needle")
        assert needle["t_happened"] < needle["t_determined"]

    def test_eraser_trace(self, capsys):
        code = run_cli("trace", "eraser", "--seed", "2")
        assert code == 0
        out = capsys.readouterr().out
        assert '"observable":"detector"' in out

    def test_empty_trace(self, capsys):
        code = run_cli("trace", "empty")
        assert code == 0
        assert "root-only" in capsys.readouterr().out
