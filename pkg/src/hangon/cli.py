"""Command-line harness: run scenarios, export traces, verify.

Subcommands:
  run {eraser,epr,eq9,double-slit}  sample a scenario, write data + report
  verify {all,fast}                 run the verification suite
  trace {needle,eraser,empty}       export a branch trace / ledger demo

Exit codes: 0 success, 1 verification failure, 2 usage or config error.
All randomness flows from --seed; data files and reports are byte-identical
for identical seed and config.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ConfigError, SimulationError
from .scenarios import (
    DETECTORS,
    EraserConfig,
    fringe_extrema,
    geometry_from_config,
    histogram_from_positions,
    momentum_detector_probabilities,
    nearest_bins,
    no_signaling_check,
    run_empty_trace,
    run_epr,
    run_eraser,
    run_eraser_trace,
    run_needle_narrative,
    run_partial_pair,
    sample_screen_hits,
    screen_density,
    visibility,
    visibility_stderr,
)
from .verify import run_suite

_PERSPECTIVE_FLAGS = {"idler-first": "idler_first", "signal-first": "signal_first"}
_ORDER_FLAGS = {"alice-first": "alice_first", "bob-record-first": "bob_record_first"}


@dataclass
class RunReport:
    """Config echo, analytic vs sampled values, and named invariant checks."""

    scenario: str
    config: dict
    analytic: dict = field(default_factory=dict)
    sampled: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)

    def add_check(self, name: str, invariant: str, passed: bool) -> None:
        self.checks.append({"name": name, "invariant": invariant, "passed": bool(passed)})

    @property
    def passed(self) -> bool:
        return all(c["passed"] for c in self.checks)

    def to_json(self) -> str:
        return json.dumps(
            {
                "scenario": self.scenario,
                "config": self.config,
                "analytic": self.analytic,
                "sampled": self.sampled,
                "checks": self.checks,
                "passed": self.passed,
            },
            sort_keys=True,
            indent=2,
        )


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}")
    except json.JSONDecodeError as e:
        raise ConfigError(f"config file {path}: line {e.lineno}: {e.msg}")
    if not isinstance(doc, dict):
        raise ConfigError(f"config file {path}: expected a JSON object")
    return doc


def _merged_settings(args, config: dict) -> dict:
    """Flags override config-file entries; both override defaults."""
    declared = config.get("scenario")
    if declared is not None and declared != args.scenario:
        raise ConfigError(
            f"config file is for scenario {declared!r}, not {args.scenario!r}"
        )
    merged = dict(config)
    for key in ("n", "seed", "bins"):
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = value
    if getattr(args, "bs", None) is not None:
        merged["bs_present"] = args.bs
    if getattr(args, "perspective", None) is not None:
        merged["perspective"] = _PERSPECTIVE_FLAGS[args.perspective]
    if getattr(args, "order", None) is not None:
        merged["order"] = _ORDER_FLAGS[args.order]
    return merged


def _require_int(settings: dict, key: str, default: int, minimum: int) -> int:
    raw = settings.get(key, default)
    try:
        value = int(raw)
    except (TypeError, ValueError):
        raise ConfigError(f"field {key!r}: expected an integer, got {raw!r}")
    if value < minimum:
        raise ConfigError(f"field {key!r}: must be >= {minimum}, got {value}")
    return value


def _geometry(settings: dict, bins: int):
    geo_cfg = dict(settings.get("geometry", {}))
    geo_cfg.setdefault("bins", bins)
    try:
        return geometry_from_config(geo_cfg)
    except (ValueError, TypeError) as e:
        raise ConfigError(f"field 'geometry': {e}")


def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def _histogram_csv(edges: np.ndarray, rows: dict) -> str:
    header = "bin_left,bin_right," + ",".join(f"count_{d}" for d in DETECTORS) + ",count_total"
    lines = [header]
    totals = sum(rows.values())
    for j in range(len(edges) - 1):
        cells = [f"{edges[j]:.17g}", f"{edges[j + 1]:.17g}"]
        cells += [str(int(rows[d][j])) for d in DETECTORS]
        cells.append(str(int(totals[j])))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def _counts_payload(counts: dict) -> dict:
    return {f"{a}{b}": int(v) for (a, b), v in sorted(counts.items())}


def _counts_csv(counts: dict) -> str:
    lines = ["outcome,count"]
    for (a, b), v in sorted(counts.items()):
        lines.append(f"{a}{b},{int(v)}")
    return "\n".join(lines) + "\n"


def cmd_run(args) -> int:
    settings = _merged_settings(args, _load_config(args.config))
    seed = _require_int(settings, "seed", 0, 0)
    out_dir = Path(args.out_dir)
    out_format = args.out

    if args.scenario == "eraser":
        n = _require_int(settings, "n", 100_000, 1)
        bins = _require_int(settings, "bins", 512, 2)
        geometry = _geometry(settings, bins)
        perspective = settings.get("perspective", "idler_first")
        bs_present = bool(settings.get("bs_present", True))
        cfg = EraserConfig(bs_present, perspective, n, geometry, seed)
        run = run_eraser(cfg)
        report = RunReport(
            scenario="eraser",
            config={
                "scenario": "eraser",
                "bs_present": bs_present,
                "perspective": perspective,
                "n": n,
                "seed": seed,
                "bins": bins,
                "geometry": geometry.to_config(),
            },
        )
        report.analytic = {
            "detector_marginals": {d: 0.25 for d in DETECTORS},
            "no_signaling_residual": no_signaling_check(geometry),
        }
        report.sampled = {"detector_counts": run.detector_counts}
        report.add_check(
            "no_signaling",
            "screen marginal identical with and without the beam splitter",
            report.analytic["no_signaling_residual"] <= 1e-12,
        )
        report.add_check(
            "photon_conservation",
            "histogram totals equal the photon count",
            run.histograms["total"].total == n,
        )
        _write(
            out_dir / "eraser_hist.csv",
            _histogram_csv(
                geometry.bin_edges,
                {d: run.joint_counts[i] for i, d in enumerate(DETECTORS)},
            ),
        )
        _write(out_dir / "eraser_report.json", report.to_json() + "\n")
        print(report.to_json())
        return 0 if report.passed else 1

    if args.scenario == "epr":
        n = _require_int(settings, "n", 10_000, 1)
        order = settings.get("order", "alice_first")
        run = run_epr(order, n, seed)
        report = RunReport(
            scenario="epr",
            config={"scenario": "epr", "order": order, "n": n, "seed": seed},
        )
        report.analytic = {f"{a}{b}": p for (a, b), p in sorted(run.analytic.items())}
        report.sampled = {"counts": _counts_payload(run.counts)}
        report.add_check(
            "anticorrelation",
            "no same-sign joint outcomes in any run",
            run.same_sign_count == 0,
        )
        payload = (
            _counts_csv(run.counts)
            if out_format == "csv"
            else json.dumps(_counts_payload(run.counts), sort_keys=True, indent=2) + "\n"
        )
        _write(out_dir / f"epr_counts.{out_format}", payload)
        _write(out_dir / "epr_report.json", report.to_json() + "\n")
        print(report.to_json())
        return 0 if report.passed else 1

    if args.scenario == "eq9":
        n = _require_int(settings, "n", 30_000, 1)
        run = run_partial_pair(n, seed)
        report = RunReport(
            scenario="eq9",
            config={"scenario": "eq9", "n": n, "seed": seed},
        )
        report.analytic = {f"{a}{b}": p for (a, b), p in sorted(run.analytic.items())}
        report.sampled = {"counts": _counts_payload(run.counts)}
        report.add_check(
            "empty_branch_never_fires",
            "the unsupported joint outcome (Y,b) never occurs",
            run.counts[("Y", "b")] == 0,
        )
        payload = (
            _counts_csv(run.counts)
            if out_format == "csv"
            else json.dumps(_counts_payload(run.counts), sort_keys=True, indent=2) + "\n"
        )
        _write(out_dir / f"eq9_counts.{out_format}", payload)
        _write(out_dir / "eq9_report.json", report.to_json() + "\n")
        print(report.to_json())
        return 0 if report.passed else 1

    if args.scenario == "double-slit":
        n = _require_int(settings, "n", 100_000, 1)
        bins = _require_int(settings, "bins", 512, 2)
        geometry = _geometry(settings, bins)
        from .rng import RngStream

        hits = sample_screen_hits(geometry, n, RngStream(seed))
        hist = histogram_from_positions(geometry, hits)
        maxima, minima = fringe_extrema(geometry)
        max_bins = nearest_bins(geometry, maxima)
        min_bins = nearest_bins(geometry, minima)
        density = screen_density(geometry)
        v_analytic = visibility(density, max_bins, min_bins)
        v_sampled = visibility(hist.counts, max_bins, min_bins)
        se = visibility_stderr(hist.counts, max_bins, min_bins)
        p_up, p_low = momentum_detector_probabilities(geometry)
        report = RunReport(
            scenario="double-slit",
            config={
                "scenario": "double-slit",
                "n": n,
                "seed": seed,
                "bins": bins,
                "geometry": geometry.to_config(),
            },
        )
        report.analytic = {
            "visibility": v_analytic,
            "n_extrema": len(maxima) + len(minima),
            "momentum_probabilities": [p_up, p_low],
        }
        report.sampled = {"visibility": v_sampled, "visibility_se": se}
        report.add_check(
            "visibility",
            "sampled fringe visibility within 3 standard errors of analytic",
            abs(v_sampled - v_analytic) <= 3 * se,
        )
        lines = ["bin_left,bin_right,count"]
        edges = geometry.bin_edges
        for j in range(bins):
            lines.append(f"{edges[j]:.17g},{edges[j + 1]:.17g},{int(hist.counts[j])}")
        _write(out_dir / "double_slit_hist.csv", "\n".join(lines) + "\n")
        _write(out_dir / "double_slit_report.json", report.to_json() + "\n")
        print(report.to_json())
        return 0 if report.passed else 1

    raise ConfigError(f"unknown scenario {args.scenario!r}")


def cmd_verify(args) -> int:
    report = run_suite(args.suite, master_seed=args.seed if args.seed is not None else 7)
    print(report.format_table())
    if args.report is not None:
        _write(Path(args.report), report.to_canonical_json() + "\n")
    return 0 if report.passed else 1


def cmd_trace(args) -> int:
    seed = args.seed if args.seed is not None else 0
    if args.scenario == "needle":
        story = run_needle_narrative(seed)
        trace = story.universe.trace_json()
        ledger = story.ledger.to_json_lines()
    elif args.scenario == "eraser":
        story = run_eraser_trace(seed, bs_present=args.bs if args.bs is not None else True)
        trace = story.universe.trace_json()
        ledger = story.ledger.to_json_lines()
    elif args.scenario == "empty":
        universe = run_empty_trace()
        trace = universe.trace_json()
        ledger = ""
    else:
        raise ConfigError(f"unknown trace scenario {args.scenario!r}")
    payload = trace + ("\n" if trace else "")
    if args.out is not None:
        _write(Path(args.out), payload)
        if ledger:
            _write(Path(args.out).with_suffix(".ledger.jsonl"), ledger + "\n")
    sys.stdout.write(payload if payload else "(root-only trace)\n")
    if ledger:
        print("--- ledger ---")
        print(ledger)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hangon",
        description="Observer-relative quantum measurement simulator.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="sample a scenario and write data files")
    run_p.add_argument("scenario", choices=["eraser", "epr", "eq9", "double-slit"])
    run_p.add_argument("--bs", action=argparse.BooleanOptionalAction, default=None,
                       help="beam splitter present (--bs / --no-bs)")
    run_p.add_argument("--perspective", choices=sorted(_PERSPECTIVE_FLAGS), default=None)
    run_p.add_argument("--order", choices=sorted(_ORDER_FLAGS), default=None)
    run_p.add_argument("--n", type=int, default=None, help="number of runs/photons")
    run_p.add_argument("--seed", type=int, default=None)
    run_p.add_argument("--bins", type=int, default=None, help="screen bins")
    run_p.add_argument("--out", choices=["csv", "json"], default="json",
                       help="format of the counts artifact")
    run_p.add_argument("--config", default=None, help="JSON config file")
    run_p.add_argument("--out-dir", default=".", help="output directory")
    run_p.set_defaults(fn=cmd_run)

    verify_p = sub.add_parser("verify", help="run the verification suite")
    verify_p.add_argument("suite", choices=["all", "fast"])
    verify_p.add_argument("--seed", type=int, default=None, help="master seed")
    verify_p.add_argument("--report", default=None, help="write the canonical report here")
    verify_p.set_defaults(fn=cmd_verify)

    trace_p = sub.add_parser("trace", help="export a branch trace")
    trace_p.add_argument("scenario", choices=["needle", "eraser", "empty"])
    trace_p.add_argument("--seed", type=int, default=None)
    trace_p.add_argument("--bs", action=argparse.BooleanOptionalAction, default=None)
    trace_p.add_argument("--out", default=None, help="write the trace here")
    trace_p.set_defaults(fn=cmd_trace)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        return args.fn(args)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return 2
    except SimulationError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
