"""Command-line front end.

    zenoloop exact      --config run.toml [--out DIR] [--seed N] [--quiet]
    zenoloop montecarlo --config run.toml ...
    zenoloop sweep      --config run.toml ...
    zenoloop ifm        --config run.toml ...

Exit codes: 0 success, 2 configuration error, 3 runtime error.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from zenoloop.analysis import SWEEP_COLUMNS, estimate_from_record, sweep
from zenoloop.config import dump_config, load_config
from zenoloop.errors import ConfigError, InsufficientDataError
from zenoloop.gaussian import position_pdf
from zenoloop.loop import calibrate_zero_position, run_ensemble
from zenoloop.zeno import evolve_exact, simulate_ifm

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_RUNTIME = 3

TRIAL_COLUMNS = ["trial_id", "fate", "cycles_completed", "arrival_time", "true_position", "pixel_index"]
SUMMARY_COLUMNS = [
    "detected_count",
    "absorbed_pl_count",
    "absorbed_loop_count",
    "premature_count",
    "mean_pixel_position",
    "mean_true_position",
    "premature_ungated_count",
    "late_count",
    "missed_imager_count",
    "lost_count",
    "n_photons",
    "zero_position",
    "o_hat",
    "std_error",
]


def fmt(v):
    """CSV cell: 12 significant digits for floats, empty for missing values."""
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        if math.isnan(v):
            return ""
        return format(float(v), ".12g")
    return str(v)


def write_csv(path, header, rows):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(v) for v in row])


def cmd_exact(rc, out):
    res = evolve_exact(rc.zeno)
    z = rc.zeno
    write_csv(
        out / "exact_summary.csv",
        [
            "theta", "xi", "n_steps", "sigma", "x0", "kappa", "expectation",
            "survival_probability", "mean_position", "position_variance",
            "weak_limit_shift", "n_components",
        ],
        [[
            z.theta, z.xi, z.n_steps, z.sigma, z.x0, z.kappa, z.expectation,
            res.survival_probability, res.mean_position, res.position_variance,
            res.weak_limit_shift, res.n_components,
        ]],
    )
    m = res.final_mixture
    write_csv(
        out / "exact_mixture.csv",
        ["index", "center", "amplitude_re", "amplitude_im"],
        [[i, c, a.real, a.imag] for i, (a, c) in enumerate(zip(m.amplitudes, m.centers))],
    )
    cum = np.cumprod(res.per_step_survival)
    write_csv(
        out / "exact_per_step.csv",
        ["step", "per_step_survival", "cumulative_survival"],
        [[i + 1, s, c] for i, (s, c) in enumerate(zip(res.per_step_survival, cum))],
    )
    grid = np.linspace(m.centers.min() - 6 * z.sigma, m.centers.max() + 6 * z.sigma, rc.pdf_points)
    write_csv(out / "exact_pdf.csv", ["x", "pdf"], zip(grid, np.atleast_1d(position_pdf(m, grid))))
    return f"survival={fmt(res.survival_probability)} mean={fmt(res.mean_position)} components={res.n_components}"


def cmd_montecarlo(rc, out):
    record = run_ensemble(rc.loop, rc.n_photons, rc.seed, workers=rc.workers)
    t = record.arrival_time
    rows = (
        [i, f.value, c, a, x, p if p >= 0 else None]
        for i, (f, c, a, x, p) in enumerate(
            zip(record.fates, record.cycles_completed, t, record.true_position, record.pixel_index)
        )
    )
    write_csv(out / "trials.csv", TRIAL_COLUMNS, rows)
    summary = record.summary()
    summary["zero_position"] = calibrate_zero_position(rc.loop)
    try:
        est = estimate_from_record(record)
        summary["o_hat"], summary["std_error"] = est.o_hat, est.std_error
    except InsufficientDataError:
        summary["o_hat"] = summary["std_error"] = math.nan
    write_csv(out / "summary.csv", SUMMARY_COLUMNS, [[summary[k] for k in SUMMARY_COLUMNS]])
    return f"detected={summary['detected_count']}/{record.n_photons} o_hat={fmt(summary['o_hat'])}"


def cmd_sweep(rc, out):
    g = rc.sweep
    rows = sweep(rc.loop, g.n_steps, g.xi, g.theta, g.photons, rc.seed, workers=rc.workers)
    write_csv(out / "sweep.csv", SWEEP_COLUMNS, ([getattr(r, c) for c in SWEEP_COLUMNS] for r in rows))
    return f"{len(rows)} sweep cells"


def cmd_ifm(rc, out):
    rows = []
    for n in rc.ifm_n:
        present = simulate_ifm(n, True)
        absent = simulate_ifm(n, False)
        closed = 1.0 - math.cos(math.pi / (2 * n)) ** (2 * n)
        rows.append([n, present.prob_detect_h, present.prob_absorbed, present.prob_detect_v, closed, absent.prob_detect_v])
    write_csv(
        out / "ifm.csv",
        ["n", "prob_detect_h", "prob_absorbed", "prob_detect_v", "closed_form_absorbed", "absent_prob_detect_v"],
        rows,
    )
    return f"{len(rows)} ifm rows"


HELP = {
    "exact": "exact noise-free evolution: summary, mixture, per-step survival, pdf grid",
    "montecarlo": "Monte Carlo ensemble of the optical loop: per-trial and summary CSVs",
    "sweep": "grid over (N, xi, theta): exact and Monte Carlo survival, estimates, baseline",
    "ifm": "interaction-free measurement probabilities against the closed form",
}

COMMANDS = {
    "exact": cmd_exact,
    "montecarlo": cmd_montecarlo,
    "sweep": cmd_sweep,
    "ifm": cmd_ifm,
}


def build_parser():
    parser = argparse.ArgumentParser(prog="zenoloop", description="Looped Zeno protective measurement simulator")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, help=HELP[name])
        p.add_argument("--config", required=True, help="TOML run configuration")
        p.add_argument("--out", help="output directory (default: [output] dir)")
        p.add_argument("--seed", type=int, help="override the configured seed")
        p.add_argument("--quiet", action="store_true", help="print nothing on success")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        rc = load_config(args.config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if args.seed is not None:
        rc = replace(rc, seed=args.seed)
    out = Path(args.out if args.out is not None else rc.output_dir)
    if args.out is not None:
        rc = replace(rc, output_dir=args.out)

    echo = dump_config(rc)
    if not args.quiet:
        print("# effective configuration")
        print(echo, end="")
    try:
        out.mkdir(parents=True, exist_ok=True)
        (out / "effective_config.toml").write_text(echo, encoding="utf-8")
        msg = COMMANDS[args.command](rc, out)
    except Exception as exc:  # noqa: BLE001 - any failure past config load is a runtime error
        print(f"runtime error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    if not args.quiet:
        print(f"# {args.command}: {msg}; wrote {out}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
