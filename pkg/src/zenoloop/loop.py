"""Monte Carlo simulation of the optical storage loop, one heralded photon at a time.

Per round trip the photon meets, in order::

    PBS -> PC1 (first pass) -> HWP1 -> BC shift -> PL -> HWP2
        -> [reinforcement PL] -> PC2 (final pass) -> PBS -> imager

A photon transmitted at the PBS leaves it horizontally polarized, so every
pass starts from |H>.  The spatial amplitude is carried as a Gaussian
mixture conditioned on survival; a position is drawn only once, when the
photon reaches the imager.

Two engines implement the same model:

* ``run_trial`` follows one photon with general mixtures and handles every
  noise process, including per-pass displacement jitter (which breaks the
  integer lattice and needs ``merge_and_prune``).
* The block engine used by ``run_ensemble`` advances thousands of photons in
  lockstep on the integer lattice.  It is used whenever displacement jitter
  is off; otherwise ``run_ensemble`` falls back to ``run_trial``.

Randomness comes from substreams keyed by (seed, block) or (seed, trial),
so results do not depend on how work is split across processes.

Positions are reported in the imager frame: lab position plus
``ImagerConfig.center_offset``.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from zenoloop import gaussian as gc
from zenoloop import polarization as pol
from zenoloop.errors import DomainError
from zenoloop.zeno import ZenoParams, evolve_exact, lattice_mixture

BLOCK_SIZE = 4096
_STREAM_BLOCK = 0
_STREAM_TRIAL = 1
_STREAM_CALIBRATION = 2


class Fate(str, enum.Enum):
    DETECTED = "detected"
    ABSORBED_AT_POLARIZER = "absorbed_at_polarizer"
    ABSORBED_IN_LOOP = "absorbed_in_loop"
    PREMATURE_EXIT_REJECTED = "premature_exit_rejected"
    PREMATURE_EXIT_DETECTED_UNGATED = "premature_exit_detected_ungated"
    LATE_EXIT_REJECTED = "late_exit_rejected"
    LATE_EXIT_DETECTED_UNGATED = "late_exit_detected_ungated"
    MISSED_IMAGER = "missed_imager"
    LOST = "lost"


FATES = list(Fate)
_CODE = {f: i for i, f in enumerate(FATES)}
_ALIVE = -1
# fates whose photon is registered by the imager
COUNTED_FATES = (Fate.DETECTED, Fate.PREMATURE_EXIT_DETECTED_UNGATED, Fate.LATE_EXIT_DETECTED_UNGATED)


def _check_prob(name, value, upper=1.0):
    if not (0.0 <= value <= upper):
        raise DomainError(f"{name} must lie in [0, {upper}], got {value!r}")


@dataclass(frozen=True)
class NoiseConfig:
    """Loop imperfections.  Angle jitters are in radians, resampled every pass;
    ``displacement_jitter_sd`` is a fraction of kappa."""

    pbs_crosstalk: float = 0.0
    per_pass_loss: float = 0.0
    hwp_angle_jitter_sd: float = 0.0
    polarizer_angle_jitter_sd: float = 0.0
    displacement_jitter_sd: float = 0.0
    pockels_failure: float = 0.0

    def __post_init__(self):
        _check_prob("pbs_crosstalk", self.pbs_crosstalk, 0.5)
        _check_prob("per_pass_loss", self.per_pass_loss)
        _check_prob("pockels_failure", self.pockels_failure)
        for name in ("hwp_angle_jitter_sd", "polarizer_angle_jitter_sd", "displacement_jitter_sd"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v >= 0):
                raise DomainError(f"{name} must be >= 0, got {v!r}")

    @property
    def has_angle_jitter(self):
        return self.hwp_angle_jitter_sd > 0 or self.polarizer_angle_jitter_sd > 0

    @classmethod
    def preset(cls, name):
        try:
            return NOISE_PRESETS[name]
        except KeyError:
            raise DomainError(f"unknown noise preset {name!r}; known: {sorted(NOISE_PRESETS)}") from None


NOISE_PRESETS = {
    "none": NoiseConfig(),
    # small but nonzero values for every noise channel
    "paper-sec4": NoiseConfig(
        pbs_crosstalk=0.005,
        per_pass_loss=0.01,
        hwp_angle_jitter_sd=0.002,
        polarizer_angle_jitter_sd=0.002,
        displacement_jitter_sd=0.01,
        pockels_failure=0.001,
    ),
}


@dataclass(frozen=True)
class ImagerConfig:
    """1D cross-section of the pixelated imager, centered on the imager-frame origin."""

    pixel_count: int = 32
    pixel_pitch: float = 1.0
    center_offset: float = 0.0

    def __post_init__(self):
        if int(self.pixel_count) != self.pixel_count or self.pixel_count < 1:
            raise DomainError("pixel_count must be an integer >= 1")
        if not (math.isfinite(self.pixel_pitch) and self.pixel_pitch > 0):
            raise DomainError("pixel_pitch must be > 0")
        if not math.isfinite(self.center_offset):
            raise DomainError("center_offset must be finite")

    def pixel_index(self, position):
        """Pixel index for imager-frame positions; -1 off the array or for NaN."""
        pos = np.asarray(position, dtype=float)
        with np.errstate(invalid="ignore"):
            idx = np.floor(pos / self.pixel_pitch + 0.5 * self.pixel_count)
            ok = np.isfinite(idx) & (idx >= 0) & (idx < self.pixel_count)
        return np.where(ok, np.nan_to_num(idx), -1).astype(np.int64)

    def pixel_center(self, index):
        idx = np.asarray(index, dtype=float)
        return (idx + 0.5 - 0.5 * self.pixel_count) * self.pixel_pitch


@dataclass(frozen=True)
class LoopConfig:
    zeno: ZenoParams
    loop_period: float = 1.0
    gate_halfwidth: float = 0.25
    imager: ImagerConfig = field(default_factory=ImagerConfig)
    noise: NoiseConfig = field(default_factory=NoiseConfig)
    reinforcement_polarizer: bool = False
    gating: bool = True
    # merge tolerance in units of sigma, used only with displacement jitter
    merge_center_tol: float = 0.01
    amp_floor: float = 1e-12

    def __post_init__(self):
        if self.zeno.n_steps < 1:
            raise DomainError("the loop needs n_steps >= 1 round trips")
        if not (math.isfinite(self.loop_period) and self.loop_period > 0):
            raise DomainError("loop_period must be > 0")
        if not (0 <= self.gate_halfwidth < self.loop_period / 2):
            raise DomainError("gate_halfwidth must lie in [0, loop_period/2)")
        if self.merge_center_tol < 0 or self.amp_floor < 0:
            raise DomainError("merge tolerances must be >= 0")

    @property
    def n_target(self):
        return self.zeno.n_steps

    @property
    def horizon(self):
        """Round trips simulated before a still-circulating photon is declared lost."""
        return 2 * self.n_target

    def in_gate(self, cycles):
        t = np.asarray(cycles) * self.loop_period
        return np.abs(t - self.n_target * self.loop_period) <= self.gate_halfwidth


@dataclass(frozen=True)
class TrialOutcome:
    fate: Fate
    cycles_completed: int
    arrival_time: float
    true_position: float
    pixel_index: Optional[int]
    # angle between the polarization leaving the last pass and |H>
    polarization_error: float = math.nan


def calibrate_zero_position(cfg: LoopConfig) -> float:
    """Imager-frame position of an undisplaced photon (crystals and polarizer
    removed, Pockels cells idle, one round trip)."""
    return cfg.zeno.x0 + cfg.imager.center_offset


def simulate_calibration(cfg: LoopConfig, n_photons: int, seed: int) -> np.ndarray:
    """Imager-frame positions of ``n_photons`` single-pass calibration photons."""
    rng = _stream(seed, _STREAM_CALIBRATION, 0)
    m = gc.GaussianMixture.single(cfg.zeno.x0, cfg.zeno.sigma)
    return gc.sample_positions(m, rng.random(n_photons)) + cfg.imager.center_offset


# ---------------------------------------------------------------------------
# shared per-pass physics


def _exit_split(h_frac, eps, reinforce):
    """Probabilities (good, bad) of the combined reinforcement/PC2/PBS stage.

    ``h_frac`` is |<H|pol>|^2 leaving HWP2.  "good" is the intended route
    (reflect out after PC2 fired, transmit otherwise), "bad" the wrong one;
    the remainder is absorption at the reinforcement polarizer.  Sampling
    good from the bottom of [0, 1) and bad from the top nests the regions of
    the reinforced loop inside those of the plain loop for a shared uniform.
    """
    h = np.asarray(h_frac, dtype=float)
    v = 1.0 - h
    if reinforce:
        good = h * (1.0 - eps)
        bad = h * eps
    else:
        good = h * (1.0 - eps) + v * eps
        bad = 1.0 - good
    return good, bad


def _pol_error(h_frac):
    return np.arccos(np.sqrt(np.clip(h_frac, 0.0, 1.0)))


def _stream(seed, kind, index):
    return np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=(kind, int(index))))


# ---------------------------------------------------------------------------
# single-photon engine


def run_trial(cfg: LoopConfig, rng: np.random.Generator) -> TrialOutcome:
    z = cfg.zeno
    nz = cfg.noise
    n_target = cfg.n_target
    sigma = z.sigma
    eps = nz.pbs_crosstalk
    tol = cfg.merge_center_tol * sigma if nz.displacement_jitter_sd > 0 else gc.DEFAULT_CENTER_TOL * sigma

    mixture = gc.GaussianMixture.single(z.x0, sigma)
    pol_err = math.nan

    def finish_exit(cycles):
        pos = float(gc.sample_positions(mixture, rng.random())) + cfg.imager.center_offset
        return _classify_exit(cfg, cycles, pos, pol_err)

    for r in range(1, cfg.horizon + 1):
        z_h1, z_p, z_h2, z_d = rng.standard_normal(4)
        u_loss, u_pl, u_exit, u_pc1, u_pc2 = rng.random(5)

        if r == 1 and u_pc1 < nz.pockels_failure:
            # never trapped: one round trip without the interaction stage
            return finish_exit(1)
        if u_loss < nz.per_pass_loss:
            return TrialOutcome(Fate.ABSORBED_IN_LOOP, r - 1, math.nan, math.nan, None, pol_err)

        state = pol.hwp(pol.H, z.theta / 2 + nz.hwp_angle_jitter_sd * z_h1)
        kappa = z.kappa * (1.0 + nz.displacement_jitter_sd * z_d)
        pass_angle = z.theta + nz.polarizer_angle_jitter_sd * z_p
        cp, sp = math.cos(pass_angle), math.sin(pass_angle)
        branched = gc.shift(mixture, kappa).scaled(cp * state.amp_h).combined(
            gc.shift(mixture, -kappa).scaled(sp * state.amp_v)
        )
        branched, _ = gc.merge_and_prune(branched, tol, cfg.amp_floor)
        pass_prob = gc.squared_norm(branched)
        if u_pl >= pass_prob:
            return TrialOutcome(Fate.ABSORBED_AT_POLARIZER, r - 1, math.nan, math.nan, None, pol_err)
        mixture = branched.scaled(1.0 / math.sqrt(pass_prob))
        state, _ = pol.polarizer_project(state, pass_angle)

        state = pol.hwp(state, z.theta / 2 + nz.hwp_angle_jitter_sd * z_h2)
        h_frac = abs(state.amp_h) ** 2 / state.squared_norm
        fired = r == n_target and u_pc2 >= nz.pockels_failure
        good, bad = _exit_split(h_frac, eps, cfg.reinforcement_polarizer)
        if u_exit < good:
            pol_err = 0.0 if cfg.reinforcement_polarizer else float(_pol_error(h_frac))
            if fired:
                return finish_exit(r)
            continue
        if u_exit >= 1.0 - bad:
            pol_err = 0.0 if cfg.reinforcement_polarizer else float(_pol_error(h_frac))
            if fired:
                continue
            return finish_exit(r)
        return TrialOutcome(Fate.ABSORBED_AT_POLARIZER, r, math.nan, math.nan, None, pol_err)

    return TrialOutcome(Fate.LOST, cfg.horizon, math.nan, math.nan, None, pol_err)


def _classify_exit(cfg, cycles, position, pol_err):
    pixel = int(cfg.imager.pixel_index(position))
    fate = _exit_fate(cfg, np.array([cycles]), np.array([pixel]))[0]
    return TrialOutcome(
        FATES[fate], cycles, cycles * cfg.loop_period, position, pixel if pixel >= 0 else None, pol_err
    )


def _exit_fate(cfg, cycles, pixel):
    in_gate = cfg.in_gate(cycles)
    early = cycles < cfg.n_target
    fate = np.where(
        early,
        _CODE[Fate.PREMATURE_EXIT_REJECTED] if cfg.gating else _CODE[Fate.PREMATURE_EXIT_DETECTED_UNGATED],
        _CODE[Fate.LATE_EXIT_REJECTED] if cfg.gating else _CODE[Fate.LATE_EXIT_DETECTED_UNGATED],
    )
    fate = np.where(in_gate, _CODE[Fate.DETECTED], fate)
    counted = in_gate | (not cfg.gating)
    return np.where(counted & (pixel < 0), _CODE[Fate.MISSED_IMAGER], fate).astype(np.int8)


# ---------------------------------------------------------------------------
# lockstep block engine (integer lattice, no displacement jitter)


class _SharedLattice:
    """Spatial state common to all photons (no angle jitter)."""

    def __init__(self, cfg):
        self.cfg = cfg
        z = cfg.zeno
        trace = evolve_exact(ZenoParams(z.theta, z.xi, cfg.horizon, z.sigma, z.x0)).per_step_survival
        self.pass_prob = np.concatenate([[1.0], trace])

    def advance(self, idx, r, theta1, theta_p):
        return np.full(idx.size, self.pass_prob[r])

    def sample(self, idx, stages, u):
        z = self.cfg.zeno
        out = np.empty(idx.size)
        for m in np.unique(stages):
            sel = stages == m
            mix = lattice_mixture(ZenoParams(z.theta, z.xi, int(m), z.sigma, z.x0))
            out[sel] = gc.sample_positions(mix, u[sel])
        return out


class _PerPhotonLattice:
    """Per-photon lattice amplitudes (angle jitter changes the branch weights)."""

    def __init__(self, cfg, n):
        self.cfg = cfg
        z = cfg.zeno
        size = cfg.horizon + 1
        self.amps = np.zeros((n, size))
        self.amps[:, 0] = 1.0
        d = np.arange(size)
        self.gram = np.exp(-0.5 * ((d[:, None] - d[None, :]) * z.xi) ** 2)

    def advance(self, idx, r, theta1, theta_p):
        # before this pass the lattice has r points (k = 0..r-1); k counts +kappa shifts
        a_old = self.amps[idx, :r]
        alpha = (np.cos(theta1) * np.cos(theta_p))[:, None]
        beta = (np.sin(theta1) * np.sin(theta_p))[:, None]
        a_new = np.zeros((idx.size, r + 1))
        a_new[:, :r] += beta * a_old
        a_new[:, 1:] += alpha * a_old
        g = self.gram[: r + 1, : r + 1]
        norm = np.einsum("bi,ij,bj->b", a_new, g, a_new)
        scale = np.where(norm > 0, 1.0 / np.sqrt(np.where(norm > 0, norm, 1.0)), 0.0)
        self.amps[idx, : r + 1] = a_new * scale[:, None]
        return norm

    def sample(self, idx, stages, u, n_grid=4096, pad=8.0, chunk=512):
        z = self.cfg.zeno
        s = z.sigma
        out = np.empty(idx.size)
        for m in np.unique(stages):
            sel = np.flatnonzero(stages == m)
            m = int(m)
            centers = z.x0 + (2 * np.arange(m + 1) - m) * z.kappa
            grid = np.linspace(centers.min() - pad * s, centers.max() + pad * s, n_grid)
            basis = (2 * np.pi * s**2) ** -0.25 * np.exp(-((grid[:, None] - centers[None, :]) ** 2) / (4 * s**2))
            dx = np.diff(grid)
            for start in range(0, sel.size, chunk):
                part = sel[start : start + chunk]
                pdf = (basis @ self.amps[idx[part], : m + 1].T) ** 2
                cdf = np.vstack([np.zeros((1, part.size)), np.cumsum(0.5 * (pdf[1:] + pdf[:-1]) * dx[:, None], axis=0)])
                cdf /= cdf[-1]
                for j, p in enumerate(part):
                    out[p] = np.interp(u[p], cdf[:, j], grid)
        return out


def _simulate_block(cfg: LoopConfig, n: int, rng: np.random.Generator):
    z = cfg.zeno
    nz = cfg.noise
    n_target = cfg.n_target
    eps = nz.pbs_crosstalk
    reinforce = cfg.reinforcement_polarizer
    space = _PerPhotonLattice(cfg, n) if nz.has_angle_jitter else _SharedLattice(cfg)

    fate = np.full(n, _ALIVE, dtype=np.int8)
    cycles = np.zeros(n, dtype=np.int64)
    stages = np.zeros(n, dtype=np.int64)
    exited = np.zeros(n, dtype=bool)
    pol_err = np.full(n, np.nan)

    for r in range(1, cfg.horizon + 1):
        alive = fate == _ALIVE
        alive &= ~exited
        if not alive.any():
            break
        z_h1, z_p, z_h2 = rng.standard_normal((3, n))
        u_loss, u_pl, u_exit, u_pc1, u_pc2 = rng.random((5, n))

        if r == 1:
            untrapped = alive & (u_pc1 < nz.pockels_failure)
            exited |= untrapped
            cycles[untrapped] = 1
            alive &= ~untrapped

        lost = alive & (u_loss < nz.per_pass_loss)
        fate[lost] = _CODE[Fate.ABSORBED_IN_LOOP]
        cycles[lost] = r - 1
        alive &= ~lost

        idx = np.flatnonzero(alive)
        theta1 = z.theta + 2 * nz.hwp_angle_jitter_sd * z_h1[idx]
        theta_p = z.theta + nz.polarizer_angle_jitter_sd * z_p[idx]
        pass_prob = space.advance(idx, r, theta1, theta_p)
        blocked = u_pl[idx] >= pass_prob
        fate[idx[blocked]] = _CODE[Fate.ABSORBED_AT_POLARIZER]
        cycles[idx[blocked]] = r - 1
        idx = idx[~blocked]
        theta_p = theta_p[~blocked]
        stages[idx] = r

        # HWP2 reflects the polarizer output about its (jittered) axis
        phi = z.theta + 2 * nz.hwp_angle_jitter_sd * z_h2[idx] - theta_p
        h_frac = np.cos(phi) ** 2
        fired = (r == n_target) & (u_pc2[idx] >= nz.pockels_failure)
        good, bad = _exit_split(h_frac, eps, reinforce)
        u = u_exit[idx]
        went_good = u < good
        went_bad = (~went_good) & (u >= 1.0 - bad)
        absorbed = ~(went_good | went_bad)
        pol_err[idx] = 0.0 if reinforce else _pol_error(h_frac)
        fate[idx[absorbed]] = _CODE[Fate.ABSORBED_AT_POLARIZER]
        cycles[idx[absorbed]] = r
        leaves = np.where(fired, went_good, went_bad)
        out = idx[leaves]
        exited[out] = True
        cycles[out] = r

    still = (fate == _ALIVE) & ~exited
    fate[still] = _CODE[Fate.LOST]
    cycles[still] = cfg.horizon

    u_pos = rng.random(n)
    position = np.full(n, np.nan)
    pixel = np.full(n, -1, dtype=np.int64)
    ex = np.flatnonzero(exited)
    if ex.size:
        position[ex] = space.sample(ex, stages[ex], u_pos[ex]) + cfg.imager.center_offset
        pixel[ex] = cfg.imager.pixel_index(position[ex])
        fate[ex] = _exit_fate(cfg, cycles[ex], pixel[ex])
    return _Columns(fate, cycles, position, pixel, pol_err)


@dataclass
class _Columns:
    fate: np.ndarray
    cycles: np.ndarray
    position: np.ndarray
    pixel: np.ndarray
    pol_err: np.ndarray

    @classmethod
    def from_outcomes(cls, outcomes):
        return cls(
            np.array([_CODE[o.fate] for o in outcomes], dtype=np.int8),
            np.array([o.cycles_completed for o in outcomes], dtype=np.int64),
            np.array([o.true_position for o in outcomes], dtype=float),
            np.array([-1 if o.pixel_index is None else o.pixel_index for o in outcomes], dtype=np.int64),
            np.array([o.polarization_error for o in outcomes], dtype=float),
        )

    @classmethod
    def concat(cls, parts):
        return cls(*(np.concatenate([getattr(p, f) for p in parts]) for f in ("fate", "cycles", "position", "pixel", "pol_err")))


def _run_task(task):
    cfg, seed, kind, start, count = task
    if kind == _STREAM_BLOCK:
        return _simulate_block(cfg, count, _stream(seed, _STREAM_BLOCK, start // BLOCK_SIZE))
    return _Columns.from_outcomes([run_trial(cfg, _stream(seed, _STREAM_TRIAL, t)) for t in range(start, start + count)])


@dataclass(eq=False)
class EnsembleRecord:
    """Columnar record of an ensemble; ``outcomes`` materializes TrialOutcome objects."""

    config: LoopConfig
    seed: int
    fate_code: np.ndarray
    cycles_completed: np.ndarray
    true_position: np.ndarray
    pixel_index: np.ndarray
    polarization_error: np.ndarray

    @property
    def n_photons(self):
        return self.fate_code.size

    def __len__(self):
        return self.n_photons

    @property
    def fates(self):
        return [FATES[c] for c in self.fate_code]

    @property
    def arrival_time(self):
        exited = np.isfinite(self.true_position)
        return np.where(exited, self.cycles_completed * self.config.loop_period, np.nan)

    @property
    def outcomes(self):
        t = self.arrival_time
        return [
            TrialOutcome(
                FATES[f], int(c), float(a), float(x), None if p < 0 else int(p), float(e)
            )
            for f, c, a, x, p, e in zip(
                self.fate_code, self.cycles_completed, t, self.true_position, self.pixel_index, self.polarization_error
            )
        ]

    def mask(self, *fates):
        return np.isin(self.fate_code, [_CODE[f] for f in fates])

    def counts(self):
        return {f: int(np.count_nonzero(self.fate_code == _CODE[f])) for f in FATES}

    @property
    def counted(self):
        """Photons registered on the imager array (in gate, or any time without gating)."""
        return self.mask(*COUNTED_FATES)

    def summary(self):
        c = self.counts()
        sel = self.counted
        pixel_pos = self.config.imager.pixel_center(self.pixel_index[sel])
        return {
            "n_photons": self.n_photons,
            "detected_count": c[Fate.DETECTED],
            "absorbed_pl_count": c[Fate.ABSORBED_AT_POLARIZER],
            "absorbed_loop_count": c[Fate.ABSORBED_IN_LOOP],
            "premature_count": c[Fate.PREMATURE_EXIT_REJECTED] + c[Fate.PREMATURE_EXIT_DETECTED_UNGATED],
            "mean_pixel_position": float(pixel_pos.mean()) if sel.any() else math.nan,
            "mean_true_position": float(self.true_position[sel].mean()) if sel.any() else math.nan,
            "premature_ungated_count": c[Fate.PREMATURE_EXIT_DETECTED_UNGATED],
            "late_count": c[Fate.LATE_EXIT_REJECTED] + c[Fate.LATE_EXIT_DETECTED_UNGATED],
            "missed_imager_count": c[Fate.MISSED_IMAGER],
            "lost_count": c[Fate.LOST],
        }


def run_ensemble(cfg: LoopConfig, n_photons: int, seed: int, workers: int = 1) -> EnsembleRecord:
    """Simulate ``n_photons`` independent heralded photons.

    Output is identical for any ``workers`` value: work units are fixed
    blocks of trials, each with its own substream of ``seed``.
    """
    if n_photons < 1:
        raise DomainError("n_photons must be >= 1")
    if workers < 1:
        raise DomainError("workers must be >= 1")
    if cfg.noise.displacement_jitter_sd > 0:
        kind, unit = _STREAM_TRIAL, 256
    else:
        kind, unit = _STREAM_BLOCK, BLOCK_SIZE
    tasks = [(cfg, seed, kind, s, min(unit, n_photons - s)) for s in range(0, n_photons, unit)]
    if workers == 1 or len(tasks) == 1:
        parts = [_run_task(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_task, tasks))
    cols = _Columns.concat(parts)
    return EnsembleRecord(cfg, seed, cols.fate, cols.cycles, cols.position, cols.pixel, cols.pol_err)
