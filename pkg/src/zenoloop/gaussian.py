"""Closed-form algebra for superpositions of equal-width 1D Gaussian amplitudes.

Every component is the normalized amplitude

    phi_c(x) = (2 pi sigma^2)^(-1/4) exp(-(x - c)^2 / (4 sigma^2))

so |phi_c|^2 is a normal density with standard deviation ``sigma``.  All
components of one mixture share ``sigma``, which keeps every inner product
in closed form:

    <phi_a|phi_b>           = exp(-(a - b)^2 / (8 sigma^2))
    int x   phi_a phi_b dx  = m_ab <phi_a|phi_b>,              m_ab = (a + b) / 2
    int x^2 phi_a phi_b dx  = (m_ab^2 + sigma^2) <phi_a|phi_b>
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from zenoloop.errors import DomainError, UndefinedMomentsError

DEFAULT_CENTER_TOL = 1e-9
DEFAULT_AMP_FLOOR = 1e-12


class GaussianComponent(NamedTuple):
    amplitude: complex
    center: float


def _check_sigma(sigma):
    if not np.isfinite(sigma) or sigma <= 0:
        raise DomainError(f"width sigma must be positive and finite, got {sigma!r}")


@dataclass(frozen=True, eq=False)
class GaussianMixture:
    """Immutable superposition ``sum_k amplitudes[k] * phi_{centers[k]}``.

    Amplitudes and centers are stored as read-only numpy arrays.  The
    mixture is not normalized unless the caller makes it so.
    """

    width_sigma: float
    amplitudes: np.ndarray
    centers: np.ndarray

    def __post_init__(self):
        _check_sigma(self.width_sigma)
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        ctrs = np.array(self.centers, dtype=float).reshape(-1)
        if amps.shape != ctrs.shape:
            raise DomainError("amplitudes and centers must have the same length")
        if not (np.all(np.isfinite(amps)) and np.all(np.isfinite(ctrs))):
            raise DomainError("amplitudes and centers must be finite")
        amps.flags.writeable = False
        ctrs.flags.writeable = False
        object.__setattr__(self, "width_sigma", float(self.width_sigma))
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "centers", ctrs)

    @classmethod
    def single(cls, center=0.0, sigma=1.0, amplitude=1.0):
        return cls(sigma, [amplitude], [center])

    @classmethod
    def from_components(cls, sigma, components):
        components = list(components)
        return cls(sigma, [c.amplitude for c in components], [c.center for c in components])

    @property
    def components(self):
        return [GaussianComponent(complex(a), float(c)) for a, c in zip(self.amplitudes, self.centers)]

    def __len__(self):
        return self.amplitudes.size

    def scaled(self, factor):
        return GaussianMixture(self.width_sigma, self.amplitudes * factor, self.centers)

    def normalized(self):
        n2 = squared_norm(self)
        if n2 <= 0:
            raise UndefinedMomentsError("cannot normalize a zero-norm mixture")
        return self.scaled(1.0 / np.sqrt(n2))

    def combined(self, other):
        """Concatenate components (superposition) without merging."""
        if other.width_sigma != self.width_sigma:
            raise DomainError("mixtures must share the same width")
        return GaussianMixture(
            self.width_sigma,
            np.concatenate([self.amplitudes, other.amplitudes]),
            np.concatenate([self.centers, other.centers]),
        )


def overlap(a, b, sigma):
    """Inner product of two unit Gaussian amplitudes centered at ``a`` and ``b``."""
    _check_sigma(sigma)
    return float(np.exp(-((a - b) ** 2) / (8.0 * sigma**2)))


def overlap_matrix(centers, sigma):
    c = np.asarray(centers, dtype=float)
    diff = c[:, None] - c[None, :]
    return np.exp(-(diff**2) / (8.0 * sigma**2))


def _gram_terms(m):
    """Return (weights W_jk = conj(a_j) a_k O_jk, pair midpoints m_jk)."""
    a = m.amplitudes
    c = m.centers
    w = np.conj(a)[:, None] * a[None, :] * overlap_matrix(c, m.width_sigma)
    mid = 0.5 * (c[:, None] + c[None, :])
    return w, mid


def squared_norm(m):
    if len(m) == 0:
        return 0.0
    a = m.amplitudes
    val = np.real(np.conj(a) @ overlap_matrix(m.centers, m.width_sigma) @ a)
    return max(float(val), 0.0)


def position_pdf(m, x):
    """Unnormalized position density |psi(x)|^2; integrates to ``squared_norm(m)``.

    ``x`` may be a scalar or an array.
    """
    x_arr = np.asarray(x, dtype=float)
    s = m.width_sigma
    norm = (2.0 * np.pi * s**2) ** -0.25
    basis = norm * np.exp(-((x_arr[..., None] - m.centers) ** 2) / (4.0 * s**2))
    psi = basis @ m.amplitudes if len(m) else np.zeros(x_arr.shape, dtype=complex)
    out = np.abs(psi) ** 2
    return float(out) if out.ndim == 0 else out


def position_moments(m):
    """Mean and variance of the normalized position density."""
    w, mid = _gram_terms(m)
    n2 = float(np.real(w.sum()))
    if len(m) == 0 or n2 <= 0:
        raise UndefinedMomentsError("position moments are undefined for a zero-norm mixture")
    mean = float(np.real((w * mid).sum())) / n2
    # about the mean to avoid cancellation; interference terms may be negative
    second = float(np.real((w * ((mid - mean) ** 2)).sum())) / n2
    return mean, max(second + m.width_sigma**2, 0.0)


def shift(m, d):
    """Translate every component by ``d``."""
    return GaussianMixture(m.width_sigma, m.amplitudes, m.centers + d)


def merge_and_prune(m, center_tol=DEFAULT_CENTER_TOL, amp_floor=DEFAULT_AMP_FLOOR):
    """Collapse nearby components and drop negligible ones.

    Components are sorted by center and grouped greedily: a group holds
    every component within ``center_tol`` of the group's first (leftmost)
    center.  A group is replaced by one component carrying the summed
    amplitude, placed at the |amplitude|-weighted mean center.  Components
    whose resulting |amplitude| is below ``amp_floor`` are then dropped.

    Returns ``(mixture, norm_change)`` where ``norm_change`` is the exact
    absolute change of the squared norm.  The output is sorted by center.
    """
    if center_tol < 0 or amp_floor < 0:
        raise DomainError("center_tol and amp_floor must be non-negative")
    if len(m) == 0:
        return m, 0.0
    order = np.argsort(m.centers, kind="stable")
    c = m.centers[order]
    a = m.amplitudes[order]

    starts = [0]
    anchor = c[0]
    for i in range(1, c.size):
        if c[i] - anchor > center_tol:
            starts.append(i)
            anchor = c[i]
    starts = np.asarray(starts)

    if starts.size == c.size:
        new_a, new_c = a, c
    else:
        new_a = np.add.reduceat(a, starts)
        w = np.abs(a)
        wsum = np.add.reduceat(w, starts)
        wc = np.add.reduceat(w * c, starts)
        counts = np.diff(np.append(starts, c.size))
        plain = np.add.reduceat(c, starts) / counts
        safe = np.where(wsum > 0, wsum, 1.0)
        new_c = np.where(wsum > 0, wc / safe, plain)

    keep = np.abs(new_a) >= amp_floor
    out = GaussianMixture(m.width_sigma, new_a[keep], new_c[keep])
    if out.amplitudes.size == m.amplitudes.size:
        return out, 0.0
    return out, abs(squared_norm(out) - squared_norm(m))


def sample_positions(m, u, n_grid=4096, pad=8.0):
    """Map uniforms ``u`` to positions distributed as the normalized pdf of ``m``.

    Sampling contract: the pdf is tabulated on a uniform grid of ``n_grid``
    points over [min center - pad*sigma, max center + pad*sigma], the CDF is
    built by the trapezoid rule and inverted by linear interpolation.
    """
    grid, cdf = _grid_cdf(m, n_grid, pad)
    return np.interp(np.asarray(u, dtype=float), cdf, grid)


def _grid_cdf(m, n_grid, pad):
    s = m.width_sigma
    grid = np.linspace(m.centers.min() - pad * s, m.centers.max() + pad * s, n_grid)
    pdf = position_pdf(m, grid)
    cdf = np.concatenate([[0.0], np.cumsum(0.5 * (pdf[1:] + pdf[:-1]) * np.diff(grid))])
    if cdf[-1] <= 0:
        raise UndefinedMomentsError("cannot sample from a zero-norm mixture")
    return grid, cdf / cdf[-1]
