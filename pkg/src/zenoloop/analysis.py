"""Estimating <O> from detection records, and the projective-ensemble baseline."""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, replace

import numpy as np

from zenoloop.errors import DomainError, InsufficientDataError
from zenoloop.loop import LoopConfig, calibrate_zero_position, run_ensemble
from zenoloop.zeno import ZenoParams, survival_probability


class Method(str, enum.Enum):
    PROTECTIVE_ZENO = "protective_zeno"
    PROJECTIVE_BASELINE = "projective_baseline"


@dataclass(frozen=True)
class EstimateReport:
    o_hat: float
    std_error: float
    n_used: int
    n_sent: int
    survival_fraction: float
    method: Method
    # unclamped estimate; differs from o_hat only when outside [-1, 1]
    o_hat_raw: float = math.nan

    def __post_init__(self):
        if self.n_used > self.n_sent:
            raise DomainError("n_used cannot exceed n_sent")


def _report(raw, std_error, n_used, n_sent, method):
    return EstimateReport(
        o_hat=float(np.clip(raw, -1.0, 1.0)),
        std_error=float(std_error),
        n_used=int(n_used),
        n_sent=int(n_sent),
        survival_fraction=n_used / n_sent,
        method=method,
        o_hat_raw=float(raw),
    )


def estimate_expectation(detections, zero, n_steps, kappa, n_sent=None):
    """Invert the mean beam shift: <O> ~ (mean(x) - zero) / (N kappa).

    The standard error uses the sample standard deviation (ddof=1); it is
    infinite for a single detection.
    """
    x = np.asarray(detections, dtype=float)
    if x.size == 0:
        raise InsufficientDataError("no detections to estimate from")
    if n_steps < 1 or kappa <= 0:
        raise DomainError("need n_steps >= 1 and kappa > 0")
    scale = n_steps * kappa
    raw = (x.mean() - zero) / scale
    se = x.std(ddof=1) / (math.sqrt(x.size) * scale) if x.size > 1 else math.inf
    return _report(raw, se, x.size, x.size if n_sent is None else n_sent, Method.PROTECTIVE_ZENO)


def estimate_from_record(record, pixelated=False):
    """Estimate from every photon registered on the imager.

    With gating that is the in-gate photons only; without gating, mistimed
    exits are included too.  ``pixelated`` uses pixel centers instead of the
    sampled positions.
    """
    cfg = record.config
    sel = record.counted
    if pixelated:
        x = cfg.imager.pixel_center(record.pixel_index[sel])
    else:
        x = record.true_position[sel]
    return estimate_expectation(
        x, calibrate_zero_position(cfg), cfg.n_target, cfg.zeno.kappa, n_sent=record.n_photons
    )


def projective_baseline(theta, n_photons, seed):
    """Strong O measurements on ``n_photons`` copies of cos(theta)|H> + sin(theta)|V>."""
    if n_photons < 1:
        raise DomainError("n_photons must be >= 1")
    rng = np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=(7,)))
    outcomes = np.where(rng.random(n_photons) < math.cos(theta) ** 2, 1.0, -1.0)
    se = outcomes.std(ddof=1) / math.sqrt(n_photons) if n_photons > 1 else math.inf
    return _report(outcomes.mean(), se, n_photons, n_photons, Method.PROJECTIVE_BASELINE)


@dataclass(frozen=True)
class SweepRow:
    N: int
    xi: float
    theta: float
    photons_sent: int
    detected: int
    exact_survival: float
    mc_survival: float
    o_hat: float
    std_error: float
    baseline_std_error: float


SWEEP_COLUMNS = [f for f in SweepRow.__dataclass_fields__]


def cell_seed(seed, index):
    return int(np.random.SeedSequence(int(seed), spawn_key=(3, int(index))).generate_state(1)[0])


def sweep(base: LoopConfig, n_list, xi_list, theta_list, photons, seed, workers=1):
    """One Monte Carlo ensemble plus exact survival per (N, xi, theta) cell.

    Cells are visited in N-major order; each cell gets its own seed derived
    from ``seed`` and the cell index.  The baseline spends the same number of
    photons sent.
    """
    grid = list(itertools.product(n_list, xi_list, theta_list))
    if not grid:
        raise DomainError("sweep grid is empty")
    rows = []
    for i, (n, xi, theta) in enumerate(grid):
        zeno = ZenoParams(theta, xi, int(n), base.zeno.sigma, base.zeno.x0)
        cfg = replace(base, zeno=zeno)
        s = cell_seed(seed, i)
        record = run_ensemble(cfg, photons, s, workers=workers)
        try:
            est = estimate_from_record(record)
            o_hat, se, used = est.o_hat, est.std_error, est.n_used
        except InsufficientDataError:
            o_hat, se, used = math.nan, math.nan, 0
        base_est = projective_baseline(theta, photons, s)
        rows.append(
            SweepRow(
                N=int(n),
                xi=float(xi),
                theta=float(theta),
                photons_sent=photons,
                detected=used,
                exact_survival=survival_probability(theta, xi, int(n)),
                mc_survival=used / photons,
                o_hat=o_hat,
                std_error=se,
                baseline_std_error=base_est.std_error,
            )
        )
    return rows
