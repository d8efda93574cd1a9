"""Protocols that keep the 3-tangle above a threshold.

Writing tau(t) = 1 - amp2 cos^2(pi t + chi), the safe band tau >= tau* is
entered where pi t + chi = arccos(kappa) (mod pi) and left where
pi t + chi = pi - arccos(kappa), with kappa = sqrt((1 - tau*) / amp2).
Its width delta_t depends only on tau* and tau_min, and both single-qubit
operations used below preserve tau_min.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import oracle
from .evolution import TrajectoryPoint, evolve, time_grid
from .optimizer import optimal_rotation, t_prime_max
from .state import (GHZState, HamiltonianParams, LocalOp, PhaseShift, SigmaZ, apply_local_op,
                    b_parameter, phase_distance, to_amplitudes, wrap_phase)
from .tangle import DEGENERATE_TOL, is_stationary, rate, tau_min

TIME_EPS = 1e-12
FLOOR_TOL = 1e-9


class ThresholdError(ValueError):
    pass


class NoOpsNeeded(ThresholdError):
    """The free orbit never drops below the threshold."""


class Infeasible(ThresholdError):
    """No protocol can keep tau above this threshold."""


class BoundaryWarning(UserWarning):
    pass


@dataclass(frozen=True)
class ThresholdSolution:
    tau_star: float
    chi: float
    amp2: float
    t1: float  # entry into the band whose exit is t2; <= 0 if tau(0) >= tau*
    t2: float  # first positive exit, in (0, 1]
    delta_t: float


@dataclass
class ProtocolTimeline:
    initial: GHZState
    points: list[TrajectoryPoint]
    ops: list[tuple[float, LocalOp]] = field(default_factory=list)
    delta_t: Optional[float] = None
    kind: str = "free"
    # the guarantee starts once tau first reaches the threshold; local ops cannot raise tau
    guard_from: float = 0.0

    def guarded(self) -> list[TrajectoryPoint]:
        return [pt for pt in self.points if pt.t_tilde >= self.guard_from - TIME_EPS]

    @property
    def tau_floor(self) -> float:
        return min(pt.tau for pt in self.guarded())

    @property
    def op_count(self) -> int:
        return len(self.ops)

    def summary(self) -> dict:
        return {"kind": self.kind, "tau_floor": self.tau_floor, "op_count": self.op_count,
                "delta_t": self.delta_t, "guard_from": self.guard_from}


@dataclass(frozen=True)
class TimelineCheck:
    ok: bool
    tau_floor: float
    first_violation: Optional[float]


def stationary_phase(H: HamiltonianParams) -> float:
    """varphi_s = arctan(-1/r), in [0, 2pi); varphi_s + pi is the other eigenstate."""
    if H.gamma_x == 0.0:
        warnings.warn("r = 0: stationary phase taken as the pi/2 limit", BoundaryWarning)
        return 0.5 * math.pi
    return wrap_phase(math.atan(-1.0 / H.r))


def stationary_state(H: HamiltonianParams) -> GHZState:
    return GHZState(0.5, stationary_phase(H))


def threshold_times(state: GHZState, H: HamiltonianParams, tau_star: float) -> ThresholdSolution:
    if tau_star >= 1.0:
        raise Infeasible(f"tau* = {tau_star} cannot be maintained (tau <= 1)")
    tmin = tau_min(state, H)
    if is_stationary(state, H) or tau_star <= tmin:
        raise NoOpsNeeded(f"tau* = {tau_star} <= tau_min = {tmin}")
    phi = state.phi
    b = b_parameter(state.varphi, H)
    chi = math.atan2((1.0 - 2.0 * b) * math.sin(2.0 * phi), math.cos(2.0 * phi))
    amp2 = 1.0 - tmin
    kappa = math.sqrt((1.0 - tau_star) / amp2)
    a = math.acos(min(kappa, 1.0))
    t2 = ((math.pi - a - chi) / math.pi) % 1.0
    if t2 < TIME_EPS:
        t2 += 1.0
    delta = 1.0 - 2.0 * a / math.pi
    return ThresholdSolution(tau_star, chi, amp2, t2 - delta, t2, delta)


class _Schedule:
    """Piecewise free evolution: segment k starts at time t_k from state s_k."""

    def __init__(self, initial: GHZState, H: HamiltonianParams):
        self.initial = initial
        self.H = H
        self.starts: list[float] = [0.0]
        self.states: list[GHZState] = [initial]
        self.ops: list[tuple[float, LocalOp]] = []

    def state_at(self, t: float) -> tuple[GHZState, int]:
        k = len(self.starts) - 1
        while self.starts[k] > t + TIME_EPS:
            k -= 1
        return evolve(self.states[k], self.H, t - self.starts[k]), k

    def apply(self, t: float, op: LocalOp) -> GHZState:
        s, _ = self.state_at(t)
        s = apply_local_op(s, op)
        if abs(t - self.starts[-1]) <= TIME_EPS:
            self.states[-1] = s
        else:
            self.starts.append(t)
            self.states.append(s)
        self.ops.append((t, op))
        return s

    def timeline(self, horizon: float, dt: float, kind: str,
                 delta_t: Optional[float] = None, guard_from: float = 0.0) -> ProtocolTimeline:
        op_times = [t for t, _ in self.ops if t <= horizon + TIME_EPS]
        merged = sorted(set(op_times) | {
            t for t in time_grid(horizon, dt)
            if all(abs(t - u) > TIME_EPS for u in op_times)})
        points = []
        for t in merged:
            s, k = self.state_at(t)
            labels = [op.label for u, op in self.ops if abs(u - t) <= TIME_EPS]
            seg_t = t - self.starts[k]
            points.append(TrajectoryPoint(t, self.H.to_physical(t), s, s.tau,
                                          rate(self.states[k], self.H, seg_t), ";".join(labels)))
        return ProtocolTimeline(self.initial, points, list(self.ops), delta_t, kind, guard_from)


def _quarter(phi: float) -> bool:
    return abs(math.cos(2.0 * phi)) < DEGENERATE_TOL


def run_sigma_z_protocol(state0: GHZState, H: HamiltonianParams, tau_star: float,
                         horizon: float, sample_dt: float, margin: float = 0.0,
                         target: int = 2) -> ProtocolTimeline:
    """Optimal rotation at t = 0, then sigma_z each time tau would leave the band.

    With ``margin = 0`` the sigma_z pulses land exactly on the band exits
    t1 + k delta_t; a positive margin fires them that fraction of the interval
    earlier.
    """
    if not 0.0 < tau_star < 1.0:
        raise Infeasible(f"tau* must lie in (0, 1), got {tau_star}")
    if not 0.0 <= margin < 1.0:
        raise ValueError("margin must lie in [0, 1)")
    if _quarter(state0.phi):
        tl = run_stationary_protocol(state0, H, 0.0, horizon, sample_dt, target=target)
        tl.kind = "sigma-z/stationary"
        return tl
    sched = _Schedule(state0, H)
    rot = optimal_rotation(state0, H, target)
    if phase_distance(rot.delta, 0.0) > 0.0:
        sched.apply(0.0, rot)
    first_delta = None
    guard_from = 0.0
    t_seg, s = 0.0, sched.states[0]
    while True:
        try:
            sol = threshold_times(s, H, tau_star)
        except NoOpsNeeded:
            break
        if first_delta is None:
            first_delta = sol.delta_t
            guard_from = max(0.0, sol.t1)
        step = sol.t2 - margin * min(sol.delta_t, sol.t2)
        t_op = t_seg + step
        if t_op > horizon + TIME_EPS:
            break
        s = sched.apply(t_op, SigmaZ(target))
        t_seg = t_op
    return sched.timeline(horizon, sample_dt, "sigma-z", first_delta, guard_from)


def run_stationary_protocol(state0: GHZState, H: HamiltonianParams, delay: float,
                            horizon: float, sample_dt: float,
                            repeat_every: Optional[float] = None,
                            target: int = 2) -> ProtocolTimeline:
    """Optimal rotation, then a phase shift onto varphi_s at t'_max + delay.

    ``repeat_every`` re-applies the stationary rotation at that interval.
    """
    if delay < 0.0:
        raise ValueError("delay must be non-negative")
    if repeat_every is not None and repeat_every <= 0.0:
        raise ValueError("repeat_every must be positive")
    sched = _Schedule(state0, H)
    if is_stationary(state0, H):
        return sched.timeline(horizon, sample_dt, "stationary")
    if _quarter(state0.phi):
        t_apply = delay
    else:
        sched.apply(0.0, optimal_rotation(state0, H, target))
        t_apply = t_prime_max(state0.phi) + delay
    phi_s = stationary_phase(H)
    while t_apply <= horizon + TIME_EPS:
        cur, _ = sched.state_at(t_apply)
        goal = min((phi_s, phi_s + math.pi), key=lambda g: phase_distance(g, cur.varphi))
        sched.apply(t_apply, PhaseShift(wrap_phase(goal - cur.varphi), target))
        if repeat_every is None:
            break
        t_apply += repeat_every
    return sched.timeline(horizon, sample_dt, "stationary")


def free_timeline(state0: GHZState, H: HamiltonianParams, horizon: float,
                  sample_dt: float) -> ProtocolTimeline:
    return _Schedule(state0, H).timeline(horizon, sample_dt, "free")


def verify_timeline(tl: ProtocolTimeline, tau_star: float) -> TimelineCheck:
    if not tl.points:
        raise ValueError("empty timeline")
    first = next((pt.t_tilde for pt in tl.guarded() if pt.tau < tau_star - FLOOR_TOL), None)
    return TimelineCheck(first is None, tl.tau_floor, first)


def replay_with_oracle(tl: ProtocolTimeline, H: HamiltonianParams) -> list[float]:
    """Recompute the tau series with dense 8x8 propagation and gate matrices."""
    psi = to_amplitudes(tl.initial)
    pending = sorted(tl.ops, key=lambda x: x[0])
    t_cur = 0.0
    taus = []
    for pt in tl.points:
        psi = oracle.matrix_exp_evolve(psi, H, H.to_physical(pt.t_tilde - t_cur))
        t_cur = pt.t_tilde
        while pending and pending[0][0] <= t_cur + TIME_EPS:
            psi = oracle.local_op_matrix(pending[0][1]) @ psi
            pending.pop(0)
        taus.append(oracle.tangle_general(psi))
    return taus


def segment_minima(tl: ProtocolTimeline, after: float) -> Sequence[float]:
    """tau at every op instant at or after ``after``."""
    return [pt.tau for pt in tl.points if pt.op and pt.t_tilde >= after - TIME_EPS]
