"""Local operations that speed up the approach to tau = 1.

The rate-optimal relative phases make b = 0 (branch I, phi < pi/4) or b = 1
(branch II, phi > pi/4).  A phase shift on a single qubit reaches them without
changing tau; the universal flip sigma_x^{(x)3} is a cheaper alternative that
only sometimes helps.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Optional

from .state import (Flip, GHZState, HamiltonianParams, PhaseShift, apply_local_op,
                    phase_b_zero, wrap_phase)
from .tangle import DEGENERATE_TOL, extrema, rate_initial

QUARTER_PI = 0.25 * math.pi


class StationaryPhaseRequired(ValueError):
    """phi = pi/4: Gamma_0 vanishes for every phase, use the stationary phase instead."""


@dataclass(frozen=True)
class OptimalPhase:
    varphi: float
    branch: str  # "I" or "II"
    note: str = ""


@dataclass(frozen=True)
class FlipDecision:
    useful: bool
    reason: str  # "cond_signo", "cond2" or "not_useful"
    gamma0: float
    gamma0_flip: float


@dataclass(frozen=True)
class OptimizationReport:
    varphi_op: float
    branch: str
    gamma0_before: float
    gamma0_after: float
    t_max_before: float
    t_max_after: float
    ratio: float
    flip_useful: bool
    flip_reason: str
    note: str = ""

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class PathReport:
    A: GHZState
    B: GHZState
    C: GHZState
    D: GHZState
    tau_B: float
    tau_D: float
    gamma0_B: float
    gamma0_D: float


def _is_quarter(phi: float) -> bool:
    return abs(math.cos(2.0 * phi)) < DEGENERATE_TOL


def optimal_phase(phi: float, H: HamiltonianParams) -> OptimalPhase:
    if _is_quarter(phi):
        raise StationaryPhaseRequired("phi = pi/4: use the stationary phase varphi_s")
    notes = []
    if abs(math.sin(2.0 * phi)) < DEGENERATE_TOL:
        notes.append("zero tangle: Gamma_0 is phase-independent at t=0")
    if H.gamma_x == 0.0:
        notes.append("r = 0 lies outside the domain where the optimal phase was derived")
    base = phase_b_zero(H)
    if phi < QUARTER_PI:
        return OptimalPhase(base, "I", "; ".join(notes))
    return OptimalPhase(wrap_phase(base + math.pi), "II", "; ".join(notes))


def rotate_to_optimal(state: GHZState, H: HamiltonianParams) -> GHZState:
    return apply_local_op(state, optimal_rotation(state, H))


def optimal_rotation(state: GHZState, H: HamiltonianParams, target: int = 2) -> PhaseShift:
    op = optimal_phase(state.phi, H)
    return PhaseShift(wrap_phase(op.varphi - state.varphi), target)


def t_prime_max(phi: float) -> float:
    """First time to tau = 1 after the optimal rotation: |1/2 - 2 phi / pi|."""
    if _is_quarter(phi):
        return 0.0
    if phi < QUARTER_PI:
        return 0.5 - 2.0 * phi / math.pi
    return 2.0 * phi / math.pi - 0.5


def flip_conditions(state: GHZState, H: HamiltonianParams) -> tuple[bool, str]:
    """Decide whether the flip raises Gamma_0 from the closed-form conditions alone.

    cot^2 varphi > r^2 means the flip inverts the sign of Gamma_0, which helps
    exactly when Gamma_0 < 0.  Otherwise the flip still helps iff
    cos(varphi) sin(4 phi) < 0 (for gamma_y > 0; the sign flips with gamma_y).
    """
    vp = state.varphi
    s, c = math.sin(vp), math.cos(vp)
    cond_signo = (abs(s) < DEGENERATE_TOL) or (c * c > H.r ** 2 * s * s)
    if cond_signo and rate_initial(state, H) < 0.0:
        return True, "cond_signo"
    if H.sign_y * c * math.sin(4.0 * state.phi) < 0.0:
        return True, "cond2"
    return False, "not_useful"


def in_cond2_region(state: GHZState) -> bool:
    """The interval form of cos(varphi) sin(4 phi) < 0 for gamma_y > 0."""
    vp, phi = state.varphi, state.phi
    left = 0.5 * math.pi < vp < 1.5 * math.pi
    right = vp > 1.5 * math.pi or vp < 0.5 * math.pi
    return (left and 0.0 < phi < QUARTER_PI) or (right and QUARTER_PI < phi < 0.5 * math.pi)


def flip_decision(state: GHZState, H: HamiltonianParams) -> FlipDecision:
    g0 = rate_initial(state, H)
    g0f = rate_initial(apply_local_op(state, Flip()), H)
    useful = g0f > g0
    _, reason = flip_conditions(state, H)
    return FlipDecision(useful, reason if useful else "not_useful", g0, g0f)


def optimize(state: GHZState, H: HamiltonianParams) -> OptimizationReport:
    op = optimal_phase(state.phi, H)
    after = GHZState(state.p, op.varphi)
    t_before = extrema(state, H).t_max_first
    t_after = t_prime_max(state.phi)
    flip = flip_decision(state, H)
    return OptimizationReport(
        varphi_op=op.varphi,
        branch=op.branch,
        gamma0_before=rate_initial(state, H),
        gamma0_after=rate_initial(after, H),
        t_max_before=t_before,
        t_max_after=t_after,
        ratio=t_after / t_before,
        flip_useful=flip.useful,
        flip_reason=flip.reason,
        note=op.note,
    )


def optimization_paths(state: GHZState, H: HamiltonianParams, tol: float = 1e-10) -> PathReport:
    """The two routes A -> B (rotate) and A -> C -> D (flip, then rotate)."""
    B = rotate_to_optimal(state, H)
    C = apply_local_op(state, Flip())
    D = rotate_to_optimal(C, H)
    rep = PathReport(state, B, C, D, B.tau, D.tau, rate_initial(B, H), rate_initial(D, H))
    if abs(rep.tau_B - rep.tau_D) > tol or abs(rep.gamma0_B - rep.gamma0_D) > tol:
        raise RuntimeError(f"path endpoints disagree: {rep}")
    return rep


def ratio_value(state: GHZState, H: HamiltonianParams) -> Optional[float]:
    """t'_max / t_max, or None for the stationary state."""
    ext = extrema(state, H)
    if ext.stationary:
        return None
    return t_prime_max(state.phi) / ext.t_max_first
