"""Command-line driver for the dose-finding workbench.

Subcommands: ``simulate`` (design x scenario batches), ``sweep``
(sensitivity presets), ``compare`` (bootstrap contrast of two result
sets), and ``serve`` (the live-conduct HTTP service).  Every artifact
directory carries a manifest from which the run can be reproduced.

Exit codes: 0 success, 2 invalid configuration or usage, 3 numerical
failure, 4 corrupted event log, 5 requested port unavailable.
"""

from __future__ import annotations

import argparse
import csv
import errno
import json
import os
import socket
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .analysis import SWEEP_GRIDS, SweepSpec, bootstrap_compare, run_sweep
from .config import (
    ConfigError,
    WorkbenchConfig,
    config_to_dict,
    default_config_dict,
    load_config,
)
from .crm import PosteriorNumericalError
from .sim import compute_metrics, simulate_trials
from .timing import GammaPrior

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_CORRUPT_LOG = 4
EXIT_PORT = 5

STATE_DIR_ENV = "AWTITE_STATE_DIR"

SUMMARY_HEADER = (
    "design", "scenario", "p_correct", "se_p_correct", "frac_above",
    "se_frac_above", "dlts", "se_dlts", "reps",
)
METRICS_HEADER = ("design", "scenario", "metric", "value", "mc_se", "reps")
SWEEP_HEADER = (
    "design", "scenario", "parameter", "point", "metric", "value", "mc_se", "reps",
)
COMPARE_HEADER = (
    "metric", "mean_difference", "ci_lower", "ci_upper", "p_value",
    "p_two_sided", "n_boot",
)

SWEEP_PRESETS = {
    "accrual": "accrual_interval",
    "sample-size": "n_patients",
    "gamma": "gamma_assumed",
    "window": "t_max",
    "prior": "prior",
}

# (csv metric name, OperatingCharacteristics value field, SE field)
METRIC_FIELDS = (
    ("p_correct", "p_correct_mtd", "se_p_correct"),
    ("frac_above", "mean_fraction_above", "se_fraction_above"),
    ("dlts", "mean_dlts", "se_dlts"),
)


def _resolve_config(args) -> WorkbenchConfig:
    config = load_config(args.config)
    run = config.run
    if getattr(args, "reps", None) is not None:
        run = replace(run, replications=args.reps)
    if getattr(args, "seed", None) is not None:
        run = replace(run, base_seed=args.seed)
    if getattr(args, "designs", None):
        run = replace(run, designs=tuple(args.designs.split(",")))
    if getattr(args, "scenarios", None):
        run = replace(run, scenarios=tuple(args.scenarios.split(",")))
    if getattr(args, "trial_logs", False):
        run = replace(run, trial_logs=True)
    return WorkbenchConfig(trial=config.trial, scenarios=config.scenarios, run=run)


def _overrides(args, keys: Sequence[str]) -> dict:
    return {
        key: getattr(args, key)
        for key in keys
        if getattr(args, key, None) not in (None, False)
    }


def _write_manifest(out: Path, command: str, config: WorkbenchConfig,
                    overrides: dict, outputs: Sequence[str]) -> None:
    manifest = {
        "tool": "awtite",
        "version": __version__,
        "command": command,
        "created_at": datetime.now(timezone.utc).isoformat(),
        "base_seed": config.run.base_seed,
        "overrides": overrides,
        "config": config_to_dict(config),
        "outputs": list(outputs),
    }
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")


def _write_csv(path: Path, header: Sequence[str], rows: Sequence[Sequence]) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(header)
        writer.writerows(rows)


def _simulate_cell(payload):
    """One design x scenario batch; module-level for process pools."""
    design_id, scenario, trial_config, replications, base_seed = payload
    config = replace(
        trial_config, design=replace(trial_config.design, design=design_id)
    )
    results = simulate_trials(scenario, config, replications, base_seed)
    return design_id, scenario.name, results


def _run_cells(cells, jobs: int):
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_simulate_cell, cells))
    return [_simulate_cell(cell) for cell in cells]


def cmd_simulate(args) -> int:
    config = _resolve_config(args)
    run = config.run
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    cells = [
        (design, config.scenarios[name], config.trial, run.replications, run.base_seed)
        for design in run.designs
        for name in run.scenarios
    ]
    batches = _run_cells(cells, args.jobs)

    summary_rows, metric_rows, outputs = [], [], ["summary.csv", "metrics.csv"]
    log_dir = out / "logs"
    if run.trial_logs:
        log_dir.mkdir(exist_ok=True)
    for design, scenario_name, results in batches:
        scenario = config.scenarios[scenario_name]
        oc = compute_metrics(results, scenario)
        summary_rows.append(
            (design, scenario_name, oc.p_correct_mtd, oc.se_p_correct,
             oc.mean_fraction_above, oc.se_fraction_above, oc.mean_dlts,
             oc.se_dlts, oc.reps)
        )
        for name, value_field, se_field in METRIC_FIELDS:
            metric_rows.append(
                (design, scenario_name, name, getattr(oc, value_field),
                 getattr(oc, se_field), oc.reps)
            )
        if run.trial_logs:
            log_path = log_dir / f"{design}_{scenario_name}.jsonl"
            with open(log_path, "w") as handle:
                for i, result in enumerate(results):
                    handle.write(json.dumps({
                        "design": design,
                        "scenario": scenario_name,
                        "replication": i,
                        "selected_mtd": result.selected_mtd,
                        "true_mtd": scenario.true_mtd,
                        "doses": list(result.doses),
                        "dlt_count": result.dlt_count,
                        "n_enrolled": result.n_enrolled,
                        "fraction_above_mtd": result.fraction_above_mtd,
                        "duration": result.duration,
                    }) + "\n")
            outputs.append(f"logs/{log_path.name}")

    _write_csv(out / "summary.csv", SUMMARY_HEADER, summary_rows)
    _write_csv(out / "metrics.csv", METRICS_HEADER, metric_rows)
    _write_manifest(
        out, "simulate", config,
        _overrides(args, ("config", "reps", "seed", "designs", "scenarios",
                          "trial_logs", "jobs")),
        outputs,
    )
    for row in summary_rows:
        print(f"{row[0]:>8} {row[1]:>8}  p_correct={row[2]:.3f} "
              f"frac_above={row[4]:.3f} dlts={row[6]:.2f}")
    print(f"wrote {out / 'summary.csv'}")
    return EXIT_OK


def _format_point(value) -> str:
    if isinstance(value, GammaPrior):
        return f"Gamma({value.a:g},{value.b:g})"
    return f"{value:g}" if isinstance(value, float) else str(value)


def cmd_sweep(args) -> int:
    parameter = SWEEP_PRESETS.get(args.preset)
    if parameter is None:
        print(f"unknown sweep preset {args.preset!r}, expected one of "
              f"{', '.join(sorted(SWEEP_PRESETS))}", file=sys.stderr)
        return EXIT_CONFIG
    config = _resolve_config(args)
    run = config.run
    designs = tuple(args.designs.split(",")) if args.designs else ("aw-mle",)
    scenario_names = (
        tuple(args.scenarios.split(",")) if args.scenarios else ("standard",)
    )
    for name in scenario_names:
        if name not in config.scenarios:
            raise ConfigError(f"unknown scenario {name!r}")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    rows = []
    for design in designs:
        trial = replace(config.trial, design=replace(config.trial.design, design=design))
        for name in scenario_names:
            spec = SweepSpec(
                parameter=parameter,
                grid=SWEEP_GRIDS[parameter],
                base_config=trial,
                scenario=config.scenarios[name],
                replications=run.replications,
                base_seed=run.base_seed,
            )
            for point in run_sweep(spec):
                oc = point.characteristics
                for metric, value_field, se_field in METRIC_FIELDS:
                    rows.append(
                        (design, name, parameter, _format_point(point.value),
                         metric, getattr(oc, value_field), getattr(oc, se_field),
                         oc.reps)
                    )
    _write_csv(out / "sweep.csv", SWEEP_HEADER, rows)
    _write_manifest(
        out, "sweep", config,
        {"preset": args.preset, **_overrides(
            args, ("config", "reps", "seed", "designs", "scenarios"))},
        ["sweep.csv"],
    )
    print(f"wrote {out / 'sweep.csv'} ({len(rows)} rows)")
    return EXIT_OK


def _load_trial_logs(root: Path) -> dict[str, list[dict]]:
    records: dict[str, list[dict]] = {}
    for path in sorted(root.rglob("*.jsonl")):
        with open(path) as handle:
            for line in handle:
                if line.strip():
                    record = json.loads(line)
                    records.setdefault(record["scenario"], []).append(record)
    if not records:
        raise ConfigError(f"no trial logs (*.jsonl) found under {root}")
    return records


def _metric_vector(records: Sequence[dict], metric: str) -> list[float]:
    if metric == "p_correct":
        return [float(r["selected_mtd"] == r["true_mtd"]) for r in records]
    if metric == "frac_above":
        return [float(r["fraction_above_mtd"]) for r in records]
    return [float(r["dlt_count"]) for r in records]


def cmd_compare(args) -> int:
    groups = []
    for root in (args.dir_a, args.dir_b):
        by_scenario = _load_trial_logs(Path(root))
        groups.append(
            {name: _metric_vector(recs, args.metric)
             for name, recs in by_scenario.items()}
        )
    report = bootstrap_compare(
        groups[0], groups[1], metric=args.metric,
        n_boot=args.n_boot, seed=args.seed,
    )
    print(
        f"{report.metric}: difference={report.mean_difference:+.4f} "
        f"ci95=[{report.ci_lower:+.4f}, {report.ci_upper:+.4f}] "
        f"p={report.p_value:.4f} p_two_sided={report.p_two_sided:.4f} "
        f"n_boot={report.n_boot}"
    )
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        _write_csv(out / "compare.csv", COMPARE_HEADER, [(
            report.metric, report.mean_difference, report.ci_lower,
            report.ci_upper, report.p_value, report.p_two_sided, report.n_boot,
        )])
        print(f"wrote {out / 'compare.csv'}")
    return EXIT_OK


def cmd_serve(args) -> int:
    from .conduct import CorruptLogError, create_app

    state_dir = args.state_dir or os.environ.get(STATE_DIR_ENV)
    if not state_dir:
        print(f"no state directory: pass --state-dir or set {STATE_DIR_ENV}",
              file=sys.stderr)
        return EXIT_CONFIG
    try:
        app = create_app(state_dir, static_dir=args.static)
    except CorruptLogError as exc:
        print(f"corrupted event log: {exc}", file=sys.stderr)
        return EXIT_CORRUPT_LOG

    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
    try:
        probe.bind((args.host, args.port))
    except OSError as exc:
        if exc.errno == errno.EADDRINUSE:
            print(f"port {args.port} on {args.host} is already in use",
                  file=sys.stderr)
            return EXIT_PORT
        raise
    finally:
        probe.close()

    import uvicorn

    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="awtite",
        description="Adaptive-weight TITE-CRM dose-finding workbench",
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument(
        "--print-defaults", action="store_true",
        help="print the full default JSON configuration and exit",
    )
    sub = parser.add_subparsers(dest="command")

    def add_common(p, with_logs=False):
        p.add_argument("--config", help="JSON configuration file")
        p.add_argument("--reps", type=int, help="replications per batch")
        p.add_argument("--seed", type=int, help="base seed for derived streams")
        p.add_argument("--out", required=True, help="output directory")
        p.add_argument("--designs", help="comma-separated design ids")
        p.add_argument("--scenarios", help="comma-separated scenario names")
        p.add_argument("--jobs", type=int, default=1,
                       help="worker processes for independent batches")
        if with_logs:
            p.add_argument("--trial-logs", action="store_true",
                           dest="trial_logs",
                           help="write per-trial JSON-lines logs")

    p_sim = sub.add_parser("simulate", help="run design x scenario batches")
    add_common(p_sim, with_logs=True)
    p_sim.set_defaults(func=cmd_simulate)

    p_sweep = sub.add_parser("sweep", help="run a sensitivity sweep preset")
    p_sweep.add_argument("preset", help=", ".join(sorted(SWEEP_PRESETS)))
    add_common(p_sweep)
    p_sweep.set_defaults(func=cmd_sweep)

    p_cmp = sub.add_parser("compare", help="bootstrap-compare two result sets")
    p_cmp.add_argument("dir_a", help="directory of method A trial logs")
    p_cmp.add_argument("dir_b", help="directory of method B trial logs")
    p_cmp.add_argument("--metric", default="frac_above",
                       choices=("p_correct", "frac_above", "dlts"))
    p_cmp.add_argument("--n-boot", type=int, default=2000, dest="n_boot")
    p_cmp.add_argument("--seed", type=int, default=0)
    p_cmp.add_argument("--out", help="optional output directory")
    p_cmp.set_defaults(func=cmd_compare)

    p_serve = sub.add_parser("serve", help="host the live-conduct HTTP API")
    p_serve.add_argument("--state-dir",
                         help=f"event-log directory (or ${STATE_DIR_ENV})")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--static",
                         help="directory of UI assets to serve at /")
    p_serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.print_defaults:
        print(json.dumps(default_config_dict(), indent=2))
        return EXIT_OK
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_CONFIG
    try:
        return args.func(args)
    except (PosteriorNumericalError, FloatingPointError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ConfigError, ValueError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
