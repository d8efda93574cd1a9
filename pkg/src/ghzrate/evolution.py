"""Closed-form evolution of GHZ-form states under H = gamma_x XXX + gamma_y YYY.

Both XXX and YYY swap |000> and |111>, so the dynamics stays in that
two-dimensional span, where H acts as

    H2 = [[0, gamma_x + i gamma_y], [gamma_x - i gamma_y, 0]],   H2^2 = Omega^2 I.

All time arguments are dimensionless, t_tilde = t / T.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .state import GHZState, HamiltonianParams, b_parameter, clamp_unit, from_amplitudes, wrap_phase
from .tangle import rate


@dataclass(frozen=True)
class TrajectoryPoint:
    t_tilde: float
    t: float
    state: GHZState
    tau: float
    gamma: float
    op: str = ""


def block_hamiltonian(H: HamiltonianParams) -> np.ndarray:
    """H restricted to span{|000>, |111>}."""
    g = complex(H.gamma_x, H.gamma_y)
    return np.array([[0.0, g], [g.conjugate(), 0.0]], dtype=np.complex128)


def block_propagator(H: HamiltonianParams, t_tilde: float) -> np.ndarray:
    theta = 0.5 * math.pi * t_tilde
    return (math.cos(theta) * np.eye(2, dtype=np.complex128)
            - 1j * math.sin(theta) * block_hamiltonian(H) / H.omega)


def evolve_block(state0: GHZState, H: HamiltonianParams, t_tilde: float) -> tuple[complex, complex]:
    """Amplitudes (c_000, c_111) of exp(-iHt/hbar)|psi_0>, global phase included."""
    v = np.array([math.sqrt(state0.p), np.exp(1j * state0.varphi) * math.sqrt(state0.q)])
    c0, c1 = block_propagator(H, t_tilde) @ v
    return complex(c0), complex(c1)


def evolve(state0: GHZState, H: HamiltonianParams, t_tilde: float) -> GHZState:
    if t_tilde == 0.0:
        return state0
    return from_amplitudes(*evolve_block(state0, H, t_tilde))


def closed_form_population(state0: GHZState, H: HamiltonianParams, t_tilde: float) -> float:
    """p(t) = sin^2(pi t/2 + phi) - b sin(pi t) sin(2 phi)."""
    phi = state0.phi
    b = b_parameter(state0.varphi, H)
    x = math.pi * t_tilde
    return clamp_unit(math.sin(0.5 * x + phi) ** 2 - b * math.sin(x) * math.sin(2.0 * phi))


def alpha_phases(state0: GHZState, H: HamiltonianParams, t_tilde: float) -> tuple[float, float]:
    """alpha_1, alpha_2 from their tangent expressions, resolved with atan2.

    The tangent expressions hold for gamma_y > 0; for gamma_y < 0 the evolution
    equals that of -H run backwards, so the time argument is negated.
    Singular at odd t_tilde and at phi = pi/2, where tan() diverges.
    """
    r = H.r
    q = math.sqrt(r * r + 1.0)
    vp = state0.varphi
    tt = math.tan(0.5 * math.pi * t_tilde * H.sign_y)
    tp = math.tan(state0.phi)
    a1 = math.atan2(tt * (-r * math.cos(vp) + math.sin(vp)),
                    q * tp + tt * (r * math.sin(vp) + math.cos(vp)))
    a2 = math.atan2(q * math.sin(vp) - r * tt * tp,
                    q * math.cos(vp) - tt * tp)
    return a1, a2


def relative_phase(state0: GHZState, H: HamiltonianParams, t_tilde: float) -> float:
    """varphi(t) = alpha_2 - alpha_1, reduced to [0, 2pi)."""
    a1, a2 = alpha_phases(state0, H, t_tilde)
    return wrap_phase(a2 - a1)


def sample_trajectory(state0: GHZState, H: HamiltonianParams,
                      t_grid: Sequence[float]) -> list[TrajectoryPoint]:
    out = []
    for tt in t_grid:
        s = evolve(state0, H, tt)
        out.append(TrajectoryPoint(tt, H.to_physical(tt), s, s.tau, rate(state0, H, tt)))
    return out


def time_grid(horizon: float, dt: float) -> list[float]:
    """0, dt, 2 dt, ... up to and including horizon (within rounding)."""
    if horizon <= 0 or dt <= 0:
        raise ValueError("horizon and dt must be positive")
    n = int(math.floor(horizon / dt + 1e-9))
    grid = [k * dt for k in range(n + 1)]
    if horizon - grid[-1] > 1e-12:
        grid.append(horizon)
    return grid
