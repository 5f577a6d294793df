"""Exact noise-free evolution of the N-step interaction-protection protocol.

One step displaces the H component by +kappa and the V component by
-kappa, then projects the polarization back onto cos(theta)|H> +
sin(theta)|V>.  Projection multiplies the +kappa branch by p = cos^2(theta)
and the -kappa branch by q = sin^2(theta), so after N steps the
(unnormalized) spatial amplitude is a binomial comb on a lattice:

    sum_k C(N, k) p^k q^(N-k) phi(x0 + (2k - N) kappa)

Components are indexed by the integer k, so no floating-point centers are
ever compared.  Lattice neighbours differ by 2 kappa and overlap as
exp(-d^2 xi^2 / 2) for an index difference d.

The survival probability is the squared norm sum_jk c_j c_k g(j - k).
Because c is a product of N independent (p, q) choices, the pair (j, k)
is a sum of N independent pair-steps, and the weights it needs can be
advanced one step at a time in O(N):

    R_n(d) = P(J - K = d)           (both indices drawn from the comb)
    T_n(d) = E[(J + K - n) ; J - K = d]
    U_n(d) = E[(J + K - n)^2 ; J - K = d]

which gives the whole per-step survival trace in O(N^2) total and the
final mean/variance without forming an N x N Gram matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy.optimize import brentq
from scipy.stats import binom

from zenoloop.errors import DomainError
from zenoloop.gaussian import GaussianMixture


@dataclass(frozen=True)
class ZenoParams:
    theta: float
    xi: float
    n_steps: int
    sigma: float = 1.0
    x0: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.theta):
            raise DomainError("theta must be finite")
        if not (math.isfinite(self.xi) and self.xi >= 0):
            raise DomainError(f"xi must be >= 0, got {self.xi!r}")
        if int(self.n_steps) != self.n_steps or self.n_steps < 0:
            raise DomainError(f"n_steps must be a non-negative integer, got {self.n_steps!r}")
        if not (math.isfinite(self.sigma) and self.sigma > 0):
            raise DomainError(f"sigma must be > 0, got {self.sigma!r}")
        if not math.isfinite(self.x0):
            raise DomainError("x0 must be finite")
        object.__setattr__(self, "n_steps", int(self.n_steps))

    @property
    def kappa(self):
        return self.xi * self.sigma

    @property
    def expectation(self):
        return math.cos(self.theta) ** 2 - math.sin(self.theta) ** 2


@dataclass(frozen=True, eq=False)
class ExactZenoResult:
    params: ZenoParams
    survival_probability: float
    final_mixture: GaussianMixture
    mean_position: float
    position_variance: float
    weak_limit_shift: float
    per_step_survival: np.ndarray = field(repr=False)

    @property
    def n_components(self):
        return len(self.final_mixture)


def _branch_weights(theta):
    p = math.cos(theta) ** 2
    q = math.sin(theta) ** 2
    return p, q


def lattice_coefficients(n, theta):
    """Binomial comb weights C(n, k) p^k q^(n-k), k = 0..n."""
    p, q = _branch_weights(theta)
    k = np.arange(n + 1)
    if q == 0.0 or p == 0.0:
        c = np.zeros(n + 1)
        c[n if q == 0.0 else 0] = 1.0
        return c
    # renormalize p + q = 1 exactly so scipy's pmf is well-defined
    return binom.pmf(k, n, p / (p + q)) * (p + q) ** n


def evolve_exact(p: ZenoParams) -> ExactZenoResult:
    n = p.n_steps
    pp, qq = _branch_weights(p.theta)
    same = pp * pp + qq * qq
    drift = pp * pp - qq * qq
    cross = pp * qq

    size = 2 * n + 1
    R = np.zeros(size)
    T = np.zeros(size)
    U = np.zeros(size)
    R[n] = 1.0
    d_all = np.arange(-n, n + 1)
    g_all = np.exp(-0.5 * (d_all * p.xi) ** 2)

    trace = np.empty(n)
    prev = 1.0
    for step in range(1, n + 1):
        # window of reachable differences after this step is [n - step, n + step]
        lo, hi = n - step, n + step + 1
        r0, t0, u0 = R[lo:hi].copy(), T[lo:hi].copy(), U[lo:hi].copy()
        Rn = same * r0
        Tn = same * t0 + drift * r0
        Un = same * u0 + 2.0 * drift * t0 + same * r0
        # pair-steps with d = +1 and d = -1 both carry weight p q
        Rn[1:] += cross * r0[:-1]
        Rn[:-1] += cross * r0[1:]
        Tn[1:] += cross * t0[:-1]
        Tn[:-1] += cross * t0[1:]
        Un[1:] += cross * u0[:-1]
        Un[:-1] += cross * u0[1:]
        R[lo:hi], T[lo:hi], U[lo:hi] = Rn, Tn, Un
        cum = float(np.dot(g_all[lo:hi], Rn))
        trace[step - 1] = cum / prev if prev > 0 else 0.0
        prev = cum

    survival = float(np.dot(g_all, R)) if n else 1.0
    kappa = p.kappa
    if survival > 0:
        t_bar = float(np.dot(g_all, T)) / survival
        u_bar = float(np.dot(g_all, U)) / survival
    else:
        t_bar = u_bar = 0.0
    mean = p.x0 + kappa * t_bar
    variance = max(kappa**2 * (u_bar - t_bar**2) + p.sigma**2, 0.0)

    mixture = _final_mixture(p, survival)
    return ExactZenoResult(
        params=p,
        survival_probability=survival,
        final_mixture=mixture,
        mean_position=mean,
        position_variance=variance,
        weak_limit_shift=n * kappa * p.expectation,
        per_step_survival=trace,
    )


def lattice_mixture(p: ZenoParams, normalize=True):
    """Conditional (or unnormalized) spatial state after ``p.n_steps`` steps."""
    n = p.n_steps
    c = lattice_coefficients(n, p.theta)
    centers = p.x0 + (2 * np.arange(n + 1) - n) * p.kappa
    if p.xi == 0:
        c, centers = np.array([c.sum()]), np.array([p.x0])
    m = GaussianMixture(p.sigma, c, centers)
    return m.normalized() if normalize else m


def _final_mixture(p, survival):
    m = lattice_mixture(p, normalize=False)
    if survival <= 0:
        return m
    return m.scaled(1.0 / math.sqrt(survival))


def survival_probability(theta, xi, n_steps):
    """Survival after ``n_steps`` steps from one autocorrelation of the comb."""
    if n_steps == 0:
        return 1.0
    c = lattice_coefficients(n_steps, theta)
    r = np.correlate(c, c, mode="full")
    d = np.arange(-n_steps, n_steps + 1)
    return float(np.dot(np.exp(-0.5 * (d * xi) ** 2), r))


def survival_threshold_xi(n_steps=100, theta=math.pi / 4, target=0.5, xtol=1e-12):
    """Largest xi with survival >= ``target`` (survival is decreasing in xi)."""
    f = lambda xi: survival_probability(theta, xi, n_steps) - target
    hi = 1.0
    while f(hi) > 0:
        hi *= 2.0
        if hi > 1e6:
            raise DomainError("survival never drops below target")
    return brentq(f, 0.0, hi, xtol=xtol)


class WeakLimitPoint(NamedTuple):
    n: int
    mean_shift: float
    survival: float


def weak_limit_series(c, theta, n_list, sigma=1.0):
    """Exact mean shift and survival with kappa = c sigma / n for each n.

    As n grows the shift approaches c sigma <O> and survival approaches 1.
    """
    if c <= 0:
        raise DomainError("c must be positive")
    out = []
    for n in n_list:
        if n < 1:
            raise DomainError("each n must be >= 1")
        res = evolve_exact(ZenoParams(theta=theta, xi=c / n, n_steps=n, sigma=sigma, x0=0.0))
        out.append(WeakLimitPoint(n, res.mean_position, res.survival_probability))
    return out


class IFMResult(NamedTuple):
    prob_detect_h: float
    prob_absorbed: float
    prob_detect_v: float


def simulate_ifm(n, object_present):
    """Zeno interaction-free measurement with n rotations of pi/(2n).

    With the object in the V arm, every cycle projects the photon onto H and
    the V part is absorbed.  Without it, the rotations accumulate to V.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    step = math.pi / (2 * n)
    cs, sn = math.cos(step), math.sin(step)
    h, v = 1.0, 0.0
    absorbed = 0.0
    for _ in range(n):
        h, v = cs * h - sn * v, sn * h + cs * v
        if object_present:
            absorbed += v * v
            v = 0.0
    return IFMResult(h * h, absorbed, v * v)
