"""GHZ-form states sin(phi)|000> + e^{i varphi} cos(phi)|111>, couplings and local operations.

States are stored as ``(p, varphi)`` with ``p = sin^2(phi)`` the population of
``|000>`` and ``varphi`` the relative phase reduced to ``[0, 2pi)``.  States that
differ by a global phase are identified.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

TWO_PI = 2.0 * math.pi
CLAMP_TOL = 1e-12


def wrap_phase(x: float) -> float:
    """Reduce an angle to [0, 2pi)."""
    y = math.fmod(x, TWO_PI)
    if y < 0.0:
        y += TWO_PI
    # fmod of a tiny negative number can round up to exactly 2pi
    if y >= TWO_PI:
        y = 0.0
    return y


def phase_distance(a: float, b: float) -> float:
    """Smallest absolute angular difference between two phases, in [0, pi]."""
    d = wrap_phase(a - b)
    return min(d, TWO_PI - d)


def clamp_unit(x: float, tol: float = CLAMP_TOL) -> float:
    """Clamp ``x`` into [0, 1] if it overshoots by at most ``tol``; otherwise raise."""
    if x < -tol or x > 1.0 + tol:
        raise ValueError(f"value {x!r} outside [0, 1] beyond tolerance {tol}")
    return min(max(x, 0.0), 1.0)


@dataclass(frozen=True)
class GHZState:
    p: float
    varphi: float
    # population of |111>; kept alongside p so that 1 - p does not lose digits near p = 1
    q: float = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if not (math.isfinite(self.p) and math.isfinite(self.varphi)):
            raise ValueError("GHZState parameters must be finite")
        p = clamp_unit(float(self.p))
        if self.q is None:
            q = 1.0 - p
        else:
            q = clamp_unit(float(self.q))
            if abs(p + q - 1.0) > CLAMP_TOL:
                raise ValueError(f"populations do not sum to one: {p} + {q}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "varphi", wrap_phase(float(self.varphi)))

    @property
    def phi(self) -> float:
        """Population angle in [0, pi/2] with sin(phi) = sqrt(p)."""
        return math.atan2(math.sqrt(self.p), math.sqrt(self.q))

    @property
    def tau(self) -> float:
        return 4.0 * self.p * self.q


@dataclass(frozen=True)
class HamiltonianParams:
    """Couplings of H = gamma_x XXX + gamma_y YYY."""

    gamma_x: float
    gamma_y: float
    hbar: float = 1.0

    def __post_init__(self):
        for v in (self.gamma_x, self.gamma_y, self.hbar):
            if not math.isfinite(v):
                raise ValueError("Hamiltonian parameters must be finite")
        if self.gamma_y == 0.0:
            raise ValueError("gamma_y must be non-zero")
        if self.hbar <= 0.0:
            raise ValueError("hbar must be positive")

    @classmethod
    def from_ratio(cls, r: float, gamma_y: float = 1.0, hbar: float = 1.0) -> "HamiltonianParams":
        return cls(r * gamma_y, gamma_y, hbar)

    @property
    def r(self) -> float:
        return self.gamma_x / self.gamma_y

    @property
    def omega(self) -> float:
        return math.hypot(self.gamma_x, self.gamma_y)

    @property
    def sign_y(self) -> float:
        return 1.0 if self.gamma_y > 0 else -1.0

    @property
    def T(self) -> float:
        """Period of the 3-tangle."""
        r = self.r
        return math.pi * self.hbar / (2.0 * abs(self.gamma_y) * math.sqrt(r * r + 1.0))

    def to_tilde(self, t: float) -> float:
        return t / self.T

    def to_physical(self, t_tilde: float) -> float:
        return t_tilde * self.T


@dataclass(frozen=True)
class PhaseShift:
    """diag(1, e^{i delta}) on one qubit."""

    delta: float
    target: int = 2

    def __post_init__(self):
        _check_target(self.target)

    @property
    def label(self) -> str:
        return f"phase({self.delta:.12g})@q{self.target}"


@dataclass(frozen=True)
class SigmaZ:
    target: int = 2

    def __post_init__(self):
        _check_target(self.target)

    @property
    def label(self) -> str:
        return f"sigma_z@q{self.target}"


@dataclass(frozen=True)
class Flip:
    """sigma_x on all three qubits at once.

    There is deliberately no single-qubit sigma_x: it leaves the GHZ family.
    """

    @property
    def label(self) -> str:
        return "flip"


LocalOp = Union[PhaseShift, SigmaZ, Flip]


def _check_target(target: int) -> None:
    if target not in (0, 1, 2):
        raise ValueError(f"target qubit must be 0, 1 or 2, got {target!r}")


def make_state(phi: float, varphi: float) -> GHZState:
    """Build the state sin(phi)|000> + e^{i varphi} cos(phi)|111>.

    Any real ``phi`` is accepted; negative amplitudes are absorbed into the
    relative phase (and a global phase), which brings ``phi`` back to [0, pi/2].
    """
    if not (math.isfinite(phi) and math.isfinite(varphi)):
        raise ValueError("phi and varphi must be finite")
    s, c = math.sin(phi), math.cos(phi)
    shift = (math.pi if c < 0 else 0.0) - (math.pi if s < 0 else 0.0)
    return GHZState(s * s, varphi + shift, c * c / (s * s + c * c))


def state_from_p(p: float, varphi: float) -> GHZState:
    return GHZState(p, varphi)


def apply_local_op(state: GHZState, op: LocalOp) -> GHZState:
    if isinstance(op, PhaseShift):
        return GHZState(state.p, state.varphi + op.delta, state.q)
    if isinstance(op, SigmaZ):
        return GHZState(state.p, state.varphi + math.pi, state.q)
    if isinstance(op, Flip):
        return GHZState(state.q, -state.varphi, state.p)
    raise TypeError(f"not a local operation: {op!r}")


def to_amplitudes(state: GHZState) -> np.ndarray:
    """8-component state vector, basis index 4n + 2l + m for |n l m>."""
    psi = np.zeros(8, dtype=np.complex128)
    psi[0] = math.sqrt(state.p)
    psi[7] = np.exp(1j * state.varphi) * math.sqrt(state.q)
    return psi


def from_amplitudes(c000: complex, c111: complex, tol: float = 1e-10) -> GHZState:
    """Normal form of a|000> + b|111>, dropping the global phase."""
    n = abs(c000) ** 2 + abs(c111) ** 2
    if abs(n - 1.0) > tol:
        raise ValueError(f"amplitudes not normalized (norm^2 = {n!r})")
    p = abs(c000) ** 2 / n
    q = abs(c111) ** 2 / n
    if abs(c000) == 0.0:
        varphi = float(np.angle(c111))
    elif abs(c111) == 0.0:
        varphi = 0.0
    else:
        varphi = float(np.angle(c111 * np.conj(c000)))
    return GHZState(p, varphi, q)


def b_parameter(varphi: float, H: HamiltonianParams) -> float:
    """b = (1 - (gamma_x sin varphi + gamma_y cos varphi) / Omega) / 2, in [0, 1].

    For gamma_y > 0 this is (1 - (r sin varphi + cos varphi)/sqrt(r^2+1)) / 2.
    Writing it with the signed couplings keeps it exact when gamma_y < 0.
    """
    c = (H.gamma_x * math.sin(varphi) + H.gamma_y * math.cos(varphi)) / H.omega
    return clamp_unit(0.5 * (1.0 - c))


def phase_b_zero(H: HamiltonianParams) -> float:
    """The relative phase with b = 0 (arctan r when gamma_y > 0), in [0, 2pi)."""
    return wrap_phase(math.atan2(H.gamma_x, H.gamma_y))


def phase_for_b(b: float, H: HamiltonianParams) -> float:
    """A relative phase realising a given b in [0, 1].

    b = (1 - cos(varphi - varphi_0)) / 2 with varphi_0 the b = 0 phase, so the
    upper branch varphi_0 + arccos(1 - 2b) is returned.
    """
    b = clamp_unit(b)
    return wrap_phase(phase_b_zero(H) + math.acos(1.0 - 2.0 * b))
