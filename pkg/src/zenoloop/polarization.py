"""Two-level polarization algebra over the {|H>, |V>} basis (Jones vectors).

Global phases are ignored throughout: only probabilities matter once the
polarization has been disentangled from the spatial mode by a projection.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from zenoloop.errors import DomainError

NORM_TOL = 1e-12


@dataclass(frozen=True)
class PolarizationState:
    """Jones vector ``amp_h |H> + amp_v |V>``; may be unnormalized."""

    amp_h: complex
    amp_v: complex

    @property
    def squared_norm(self):
        return abs(self.amp_h) ** 2 + abs(self.amp_v) ** 2

    @property
    def is_normalized(self):
        return abs(self.squared_norm - 1.0) <= NORM_TOL

    def normalized(self):
        n2 = self.squared_norm
        if n2 <= 0:
            raise DomainError("zero-norm polarization state")
        r = 1.0 / np.sqrt(n2)
        return PolarizationState(self.amp_h * r, self.amp_v * r)

    def as_array(self):
        return np.array([self.amp_h, self.amp_v], dtype=complex)


H = PolarizationState(1.0 + 0j, 0j)
V = PolarizationState(0j, 1.0 + 0j)


@dataclass(frozen=True)
class PolarizationObservable:
    """The observable |H><H| - |V><V|; eigenvalues are fixed."""

    eigenvalue_h: float = 1.0
    eigenvalue_v: float = -1.0


OBSERVABLE_HV = PolarizationObservable()


def prepare(theta):
    """cos(theta)|H> + sin(theta)|V>."""
    if not np.isfinite(theta):
        raise DomainError(f"theta must be finite, got {theta!r}")
    return PolarizationState(complex(np.cos(theta)), complex(np.sin(theta)))


def expectation(state, obs=OBSERVABLE_HV):
    if not state.is_normalized:
        raise DomainError(f"expectation needs a normalized state (norm^2 = {state.squared_norm})")
    return obs.eigenvalue_h * abs(state.amp_h) ** 2 + obs.eigenvalue_v * abs(state.amp_v) ** 2


def hwp(state, axis_angle):
    """Half-wave plate with fast axis at ``axis_angle``.

    Jones matrix [[cos 2a, sin 2a], [sin 2a, -cos 2a]]: reflects a linear
    polarization at angle phi to angle 2a - phi.
    """
    c2, s2 = np.cos(2 * axis_angle), np.sin(2 * axis_angle)
    h, v = state.amp_h, state.amp_v
    return PolarizationState(c2 * h + s2 * v, s2 * h - c2 * v)


def pockels_rotate(state):
    """Active Pockels cell: ideal 90 degree rotation, H -> V, V -> -H."""
    return PolarizationState(-state.amp_v, state.amp_h)


def polarizer_project(state, pass_angle):
    """Project onto the linear polarization at ``pass_angle``.

    Returns ``(output_state, pass_probability)`` where the probability is
    relative to the input's own squared norm.
    """
    n2 = state.squared_norm
    if n2 <= 0:
        raise DomainError("cannot project a zero-norm polarization state")
    c, s = np.cos(pass_angle), np.sin(pass_angle)
    amp = c * state.amp_h + s * state.amp_v
    prob = min(abs(amp) ** 2 / n2, 1.0)
    return PolarizationState(complex(c), complex(s)), prob


class Port(enum.Enum):
    TRANSMIT = "transmit"
    REFLECT = "reflect"


def pbs_reflect_probability(state, crosstalk_eps=0.0):
    """Probability of leaving through the reflected port.

    H transmits and V reflects; with cross-talk ``eps`` each projection is
    routed to the wrong port with probability ``eps``.
    """
    if not 0.0 <= crosstalk_eps <= 0.5:
        raise DomainError(f"cross-talk must lie in [0, 1/2], got {crosstalk_eps!r}")
    n2 = state.squared_norm
    if n2 <= 0:
        raise DomainError("cannot route a zero-norm polarization state")
    ph = abs(state.amp_h) ** 2 / n2
    return ph * crosstalk_eps + (1.0 - ph) * (1.0 - crosstalk_eps)


def pbs_route(state, crosstalk_eps, rng):
    """Sample the PBS output port; the outgoing polarization is the port's nominal one."""
    if rng.random() < pbs_reflect_probability(state, crosstalk_eps):
        return Port.REFLECT, V
    return Port.TRANSMIT, H
