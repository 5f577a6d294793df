"""Independent reference computations used as test oracles.

Nothing here imports the closed forms under test: integrals are done by
adaptive quadrature and the Zeno protocol by explicit branch enumeration.
"""

import itertools
import math

import numpy as np
from scipy import integrate


def phi(x, center, sigma):
    return (2 * math.pi * sigma**2) ** -0.25 * math.exp(-((x - center) ** 2) / (4 * sigma**2))


def psi(x, amps, centers, sigma):
    return sum(a * phi(x, c, sigma) for a, c in zip(amps, centers))


def _quad(f, lo, hi):
    # split at 0-free breakpoints so quad resolves narrow features
    val, _ = integrate.quad(f, lo, hi, limit=400, epsabs=1e-14, epsrel=1e-13)
    return val


def quad_overlap(a, b, sigma):
    lo, hi = min(a, b) - 12 * sigma, max(a, b) + 12 * sigma
    return _quad(lambda x: phi(x, a, sigma) * phi(x, b, sigma), lo, hi)


def quad_moments(amps, centers, sigma, pad=10.0):
    """(norm, mean, variance) of |psi|^2 by quadrature."""
    lo, hi = min(centers) - pad * sigma, max(centers) + pad * sigma
    dens = lambda x: abs(psi(x, amps, centers, sigma)) ** 2
    n0 = _quad(dens, lo, hi)
    n1 = _quad(lambda x: x * dens(x), lo, hi)
    mean = n1 / n0
    n2 = _quad(lambda x: (x - mean) ** 2 * dens(x), lo, hi)
    return n0, mean, n2 / n0


def brute_force_zeno(theta, xi, n, sigma=1.0, x0=0.0):
    """Enumerate all 2^n displacement histories without collapsing equal centers.

    Returns (survival, mean, variance) of the surviving spatial state.
    """
    kappa = xi * sigma
    p, q = math.cos(theta) ** 2, math.sin(theta) ** 2
    if n == 0:
        return 1.0, x0, sigma**2
    signs = np.array(list(itertools.product((1, -1), repeat=n)), dtype=float)
    n_plus = (signs > 0).sum(axis=1)
    amps = p**n_plus * q ** (n - n_plus)
    centers = x0 + kappa * signs.sum(axis=1)
    diff = centers[:, None] - centers[None, :]
    w = amps[:, None] * amps[None, :] * np.exp(-(diff**2) / (8 * sigma**2))
    mid = 0.5 * (centers[:, None] + centers[None, :])
    s = w.sum()
    mean = (w * mid).sum() / s
    var = (w * ((mid - mean) ** 2 + sigma**2)).sum() / s
    return float(s), float(mean), float(var)
