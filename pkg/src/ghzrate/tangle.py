"""3-tangle of the evolving GHZ-form state, its extrema and its rate.

With x = pi t_tilde, c = cos 2phi and beta = (1 - 2b) sin 2phi,

    tau(t) = 1 - (beta sin x - c cos x)^2,

which has period 1 in t_tilde.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .oracle import tangle_general  # noqa: F401  re-exported
from .state import GHZState, HamiltonianParams, b_parameter, clamp_unit

DEGENERATE_TOL = 1e-12


@dataclass(frozen=True)
class TangleExtrema:
    tau_max: float
    t_max_first: Optional[float]
    tau_min: float
    t_min_first: Optional[float]
    loss: float
    case: str
    stationary: bool = False


@dataclass(frozen=True)
class RateDecomposition:
    A: float
    B: float
    C: float
    D: float
    eta: float
    sigma: int


@dataclass(frozen=True)
class SignReport:
    row: int
    column: int
    sign: int  # +1, -1, or 0 when Gamma_0 vanishes


def _coeffs(state0: GHZState, H: HamiltonianParams) -> tuple[float, float, float]:
    phi = state0.phi
    b = b_parameter(state0.varphi, H)
    return b, math.cos(2.0 * phi), (1.0 - 2.0 * b) * math.sin(2.0 * phi)


def is_stationary(state0: GHZState, H: HamiltonianParams, tol: float = DEGENERATE_TOL) -> bool:
    b, c, _ = _coeffs(state0, H)
    return abs(c) < tol and abs(1.0 - 2.0 * b) < tol


def tangle_closed_form(state0: GHZState, H: HamiltonianParams, t_tilde: float) -> float:
    _, c, beta = _coeffs(state0, H)
    x = math.pi * t_tilde
    return clamp_unit(1.0 - (beta * math.sin(x) - c * math.cos(x)) ** 2)


def tau_min(state0: GHZState, H: HamiltonianParams) -> float:
    b = b_parameter(state0.varphi, H)
    return 4.0 * b * (1.0 - b) * math.sin(2.0 * state0.phi) ** 2


def extrema(state0: GHZState, H: HamiltonianParams, k: int = 0) -> TangleExtrema:
    """First positive times of maximal (tau = 1) and minimal tangle.

    ``k`` shifts both times by whole periods.  The stationary eigenstate is
    flagged and carries no extremal times.
    """
    b, c, beta = _coeffs(state0, H)
    s2 = math.sin(2.0 * state0.phi)
    one_m_2b = 1.0 - 2.0 * b
    tmin_val = 4.0 * b * (1.0 - b) * s2 * s2
    if abs(c) < DEGENERATE_TOL and abs(one_m_2b) < DEGENERATE_TOL:
        return TangleExtrema(1.0, None, 1.0, None, 0.0, "stationary", stationary=True)
    if abs(c) < DEGENERATE_TOL:
        t_max, case = 1.0, "cos2phi=0"
    elif abs(s2) < DEGENERATE_TOL:
        t_max, case = 0.5, "sin2phi=0"
    elif abs(one_m_2b) < DEGENERATE_TOL:
        t_max, case = 0.5, "b=1/2"
    else:
        t_max = math.atan(1.0 / (one_m_2b * math.tan(2.0 * state0.phi))) / math.pi
        if t_max <= 0.0:
            t_max += 1.0
        case = "generic"
    t_min = t_max - 0.5 if t_max > 0.5 else t_max + 0.5
    return TangleExtrema(1.0, t_max + k, tmin_val, t_min + k, 1.0 - tmin_val, case)


def rate_decomposition(state0: GHZState, H: HamiltonianParams) -> RateDecomposition:
    phi = state0.phi
    b = b_parameter(state0.varphi, H)
    s2 = math.sin(2.0 * phi)
    tau0 = s2 * s2
    c4, s4 = math.cos(4.0 * phi), math.sin(4.0 * phi)
    q = 4.0 * b * (1.0 - b)
    A = math.pi * (c4 + q * tau0)
    B = math.pi * (1.0 - 2.0 * b) * s4
    D = 2.0 * tau0 * c4 + q * tau0 * tau0 - s4 * s4
    C = math.pi * math.sqrt(max(0.0, 1.0 + q * D))
    eta = math.atan2(B, A)
    if eta < 0.0:
        eta += 2.0 * math.pi
    if B == 0.0:
        # eta in {0, pi} tracks the sign of A, so sigma = +1 reproduces A sin(2 pi t)
        sigma = 1
    elif 0.0 < eta < math.pi:
        sigma = 1 if B > 0 else -1
    else:
        sigma = -1 if B > 0 else 1
    return RateDecomposition(A, B, C, D, eta, sigma)


def rate(state0: GHZState, H: HamiltonianParams, t_tilde: float) -> float:
    """Gamma(t_tilde) = d tau / d t_tilde = A sin 2pi t + B cos 2pi t."""
    d = rate_decomposition(state0, H)
    x = 2.0 * math.pi * t_tilde
    return d.A * math.sin(x) + d.B * math.cos(x)


def rate_sigma_form(state0: GHZState, H: HamiltonianParams, t_tilde: float) -> float:
    """The same rate written as sigma C sin(2 pi t + eta)."""
    d = rate_decomposition(state0, H)
    return d.sigma * d.C * math.sin(2.0 * math.pi * t_tilde + d.eta)


def rate_initial(state0: GHZState, H: HamiltonianParams) -> float:
    """Gamma_0 = pi (1 - 2b) sin 4phi."""
    b = b_parameter(state0.varphi, H)
    return math.pi * (1.0 - 2.0 * b) * math.sin(4.0 * state0.phi)


def classify_sign(state0: GHZState, H: HamiltonianParams, tol: float = DEGENERATE_TOL) -> SignReport:
    """Locate the state in the sign table of Gamma_0.

    Rows split on the sign of r sin varphi + cos varphi (taken relative to the
    sign of gamma_y, i.e. on 1 - 2b); columns on phi <= pi/4.
    """
    row = 1 if (1.0 - 2.0 * b_parameter(state0.varphi, H)) >= 0.0 else 2
    column = 1 if state0.phi <= 0.25 * math.pi else 2
    if abs(rate_initial(state0, H)) < tol:
        return SignReport(row, column, 0)
    return SignReport(row, column, 1 if row == column else -1)
