"""Qubit and qubit-pair density matrices.

Computational basis: index 0 is the ground state, 1 the excited state. The
monopole at Omega = 0 is sigma_x, whose eigenbasis |+>, |-> is the natural
basis for the gapless model. Pair states are stored in the product basis
ordered A (x) B, i.e. (00, 01, 10, 11), or in the mu-eigenbasis
(++, +-, -+, --).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

TRACE_TOL = 1e-12
PSD_TOL = 1e-10

# columns are |+>, |-> in the computational basis
HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0)
HADAMARD2 = np.kron(HADAMARD, HADAMARD)

SIGMA_PLUS = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)  # |e><g|
SIGMA_MINUS = SIGMA_PLUS.T.copy()
SIGMA_X = SIGMA_PLUS + SIGMA_MINUS


class InvalidStateError(ValueError):
    pass


def _check_density(rho: np.ndarray, n: int, trace_tol: float = TRACE_TOL) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (n, n):
        raise InvalidStateError(f"expected a {n}x{n} matrix, got shape {rho.shape}")
    if not np.all(np.isfinite(rho)):
        raise InvalidStateError("density matrix has non-finite entries")
    if not np.allclose(rho, rho.conj().T, atol=1e-12, rtol=0):
        raise InvalidStateError("density matrix is not hermitian")
    tr = np.trace(rho).real
    if abs(tr - 1.0) > trace_tol:
        raise InvalidStateError(f"trace is {tr!r}, not 1")
    lo = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T)).min()
    if lo < -PSD_TOL:
        raise InvalidStateError(f"density matrix is not positive (min eigenvalue {lo:.3e})")
    return rho


@dataclass(frozen=True, eq=False)
class QubitState:
    matrix: np.ndarray

    def __post_init__(self):
        m = _check_density(self.matrix, 2)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_params(cls, alpha: float, beta: complex) -> "QubitState":
        return cls(qubit_matrix(alpha, beta))

    @property
    def alpha(self) -> float:
        return float(self.matrix[0, 0].real)

    @property
    def beta(self) -> complex:
        return complex(self.matrix[0, 1])

    def in_mu_basis(self) -> np.ndarray:
        return HADAMARD.T @ self.matrix @ HADAMARD


def qubit_matrix(alpha: float, beta: complex) -> np.ndarray:
    """[[alpha, beta], [beta*, 1 - alpha]], validated for positivity."""
    if not 0.0 <= alpha <= 1.0:
        raise InvalidStateError(f"alpha={alpha} outside [0, 1]")
    if abs(beta) ** 2 > alpha * (1.0 - alpha) + 1e-12:
        raise InvalidStateError(f"|beta|^2 = {abs(beta) ** 2:.6g} exceeds alpha(1-alpha)")
    b = complex(beta)
    return np.array([[alpha, b], [b.conjugate(), 1.0 - alpha]], dtype=complex)


@dataclass(frozen=True, eq=False)
class PairState:
    """Two-qubit state; `matrix` is in the mu-eigenbasis (++, +-, -+, --)."""

    matrix: np.ndarray

    def __post_init__(self):
        m = _check_density(self.matrix, 4, trace_tol=1e-10)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_computational(cls, rho: np.ndarray) -> "PairState":
        return cls(to_mu_basis(rho))

    @classmethod
    def product(cls, rho_a: np.ndarray, rho_b: np.ndarray) -> "PairState":
        """rho_a (x) rho_b, both given in the computational basis."""
        return cls.from_computational(np.kron(rho_a, rho_b))

    def computational(self) -> np.ndarray:
        return from_mu_basis(self.matrix)


def to_mu_basis(rho: np.ndarray) -> np.ndarray:
    return HADAMARD2.T @ np.asarray(rho, dtype=complex) @ HADAMARD2


def from_mu_basis(rho: np.ndarray) -> np.ndarray:
    return HADAMARD2 @ np.asarray(rho, dtype=complex) @ HADAMARD2.T


def partial_trace_b(rho: np.ndarray) -> np.ndarray:
    """Trace out the second qubit of a 4x4 matrix (any product basis)."""
    return np.einsum("ibjb->ij", np.asarray(rho).reshape(2, 2, 2, 2))


def partial_trace_a(rho: np.ndarray) -> np.ndarray:
    return np.einsum("aiaj->ij", np.asarray(rho).reshape(2, 2, 2, 2))


def operator_norm(m: np.ndarray) -> float:
    return float(np.linalg.norm(m, 2))
