"""Brute-force 8-dimensional reference path.

Nothing here relies on the GHZ-family closed forms: states are plain length-8
complex arrays (basis index ``4n + 2l + m`` for ``|n l m>``), evolution is a
dense matrix exponential, and the 3-tangle is computed for arbitrary pure states.
"""
from __future__ import annotations

import math

import numpy as np

from .state import Flip, HamiltonianParams, LocalOp, PhaseShift, SigmaZ

NORM_TOL = 1e-8
PSD_TOL = 1e-9

I2 = np.eye(2, dtype=np.complex128)
SX = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SY = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SZ = np.array([[1, 0], [0, -1]], dtype=np.complex128)


def kron3(a, b, c) -> np.ndarray:
    return np.kron(np.kron(a, b), c)


def on_qubit(u: np.ndarray, target: int) -> np.ndarray:
    """Embed a single-qubit operator; qubit 0 is the leftmost tensor factor."""
    ops = [I2, I2, I2]
    ops[target] = u
    return kron3(*ops)


def check_pure_state(psi, tol: float = NORM_TOL) -> np.ndarray:
    psi = np.asarray(psi, dtype=np.complex128)
    if psi.shape != (8,):
        raise ValueError(f"expected 8 amplitudes, got shape {psi.shape}")
    n = float(np.vdot(psi, psi).real)
    if abs(n - 1.0) > tol:
        raise ValueError(f"state not normalized: norm^2 = {n!r}")
    return psi


def random_pure_state(rng: np.random.Generator) -> np.ndarray:
    """Haar-random 3-qubit pure state."""
    v = rng.normal(size=8) + 1j * rng.normal(size=8)
    return v / np.linalg.norm(v)


def ghz_state() -> np.ndarray:
    psi = np.zeros(8, dtype=np.complex128)
    psi[0] = psi[7] = 1 / math.sqrt(2)
    return psi


def w_state() -> np.ndarray:
    psi = np.zeros(8, dtype=np.complex128)
    psi[[1, 2, 4]] = 1 / math.sqrt(3)
    return psi


def hamiltonian_matrix(H: HamiltonianParams) -> np.ndarray:
    return H.gamma_x * kron3(SX, SX, SX) + H.gamma_y * kron3(SY, SY, SY)


def local_op_matrix(op: LocalOp) -> np.ndarray:
    if isinstance(op, PhaseShift):
        return on_qubit(np.diag([1.0, np.exp(1j * op.delta)]), op.target)
    if isinstance(op, SigmaZ):
        return on_qubit(SZ, op.target)
    if isinstance(op, Flip):
        return kron3(SX, SX, SX)
    raise TypeError(f"not a local operation: {op!r}")


def expm_taylor(a: np.ndarray, tol: float = 1e-16, max_terms: int = 60) -> np.ndarray:
    """exp(a) by a truncated Taylor series with scaling and squaring."""
    a = np.asarray(a, dtype=np.complex128)
    norm = np.linalg.norm(a, 1)
    s = max(0, int(math.ceil(math.log2(norm / 0.5)))) if norm > 0.5 else 0
    a = a / (2.0 ** s)
    out = np.eye(a.shape[0], dtype=np.complex128)
    term = out.copy()
    for k in range(1, max_terms):
        term = term @ a / k
        out = out + term
        if np.linalg.norm(term, 1) < tol:
            break
    for _ in range(s):
        out = out @ out
    return out


def propagator(H: HamiltonianParams, t: float) -> np.ndarray:
    """U = exp(-i H t / hbar) for physical time t."""
    return expm_taylor(-1j * hamiltonian_matrix(H) * (t / H.hbar))


def matrix_exp_evolve(psi, H: HamiltonianParams, t: float) -> np.ndarray:
    psi = check_pure_state(psi)
    return propagator(H, t) @ psi


def tangle_general(psi) -> float:
    """3-tangle of a pure state via 4|d1 - 2 d2 + 4 d3|, a_ij = c_0ij, b_ij = c_1ij."""
    c = check_pure_state(psi).reshape(2, 2, 2)
    a, b = c[0], c[1]
    d1 = (a[0, 0] ** 2 * b[1, 1] ** 2 + a[0, 1] ** 2 * b[1, 0] ** 2
          + a[1, 0] ** 2 * b[0, 1] ** 2 + a[1, 1] ** 2 * b[0, 0] ** 2)
    d2 = (a[0, 0] * a[1, 1] * b[0, 0] * b[1, 1] + a[0, 1] * a[1, 0] * b[1, 0] * b[0, 1]
          + (a[1, 0] * b[0, 1] + a[0, 1] * b[1, 0]) * (a[0, 0] * b[1, 1] + a[1, 1] * b[0, 0]))
    d3 = a[0, 0] * a[1, 1] * b[1, 0] * b[0, 1] + a[0, 1] * a[1, 0] * b[0, 0] * b[1, 1]
    return float(4.0 * abs(d1 - 2.0 * d2 + 4.0 * d3))


def reduced_density(psi, keep: tuple[int, ...]) -> np.ndarray:
    """Partial trace of |psi><psi| onto the listed qubits (in increasing order)."""
    t = check_pure_state(psi).reshape(2, 2, 2)
    traced = [q for q in range(3) if q not in keep]
    t = np.moveaxis(t, list(keep) + traced, list(range(3)))
    m = t.reshape(2 ** len(keep), -1)
    return m @ m.conj().T


def concurrence_2q(rho: np.ndarray) -> float:
    """Wootters concurrence of a two-qubit density matrix."""
    rho = np.asarray(rho, dtype=np.complex128)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 density matrix, got {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > PSD_TOL:
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho).real - 1.0) > PSD_TOL:
        raise ValueError("density matrix does not have unit trace")
    if np.linalg.eigvalsh(rho).min() < -PSD_TOL:
        raise ValueError("density matrix is not positive semidefinite")
    # The square roots of the eigenvalues of rho (YY) rho* (YY) are the singular
    # values of sqrt(rho) (YY) sqrt(rho)*.  Taking them as singular values keeps
    # the vanishing ones second order in rounding dust (first order via eigvals).
    w, v = np.linalg.eigh(rho)
    root = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T
    lam = np.linalg.svd(root @ np.kron(SY, SY) @ root.conj(), compute_uv=False)
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def ckw_tangle(psi) -> float:
    """tau = C^2_{a|bc} - C^2_{a|b} - C^2_{a|c}, with a = qubit 0."""
    psi = check_pure_state(psi)
    rho_a = reduced_density(psi, (0,))
    c2_a_bc = 2.0 * (1.0 - float(np.trace(rho_a @ rho_a).real))
    c_ab = concurrence_2q(reduced_density(psi, (0, 1)))
    c_ac = concurrence_2q(reduced_density(psi, (0, 2)))
    return c2_a_bc - c_ab ** 2 - c_ac ** 2


def ghz_components(psi) -> tuple[float, float]:
    """(p, varphi) of a vector supported on |000>, |111> (varphi in (-pi, pi])."""
    psi = np.asarray(psi)
    p = float(abs(psi[0]) ** 2)
    return p, float(np.angle(psi[7] * np.conj(psi[0])))
