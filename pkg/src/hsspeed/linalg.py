"""Dense complex linear algebra for n-qubit registers.

Matrices are plain ``numpy`` arrays. The computational basis is ordered
``|0...00>, |0...01>, ...`` with qubit 0 as the leftmost tensor factor.
"""

from __future__ import annotations

from typing import NamedTuple, Sequence

import numpy as np

from .exceptions import (
    DimensionMismatchError,
    InvariantViolation,
    NoConvergenceError,
    NonHermitianError,
    ZeroVectorError,
)

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-10
POSITIVITY_TOL = -1e-10

IDENTITY = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (IDENTITY, SIGMA_X, SIGMA_Y, SIGMA_Z)


class EigenDecomposition(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def as_matrix(a, name: str = "matrix") -> np.ndarray:
    """Coerce ``a`` to a finite 2-d complex array."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise DimensionMismatchError(f"{name} must be 2-d, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise InvariantViolation(f"{name} has non-finite entries")
    return m


def hermiticity_error(a: np.ndarray) -> float:
    return float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0


def hermitian_eig(a, tol: float = 1e-10) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix.

    Eigenvalues are returned in ascending order, eigenvectors as the
    orthonormal columns of a unitary matrix.

    Raises:
        NonHermitianError: if ``max|a - a^dagger| > tol``.
        NoConvergenceError: if LAPACK fails to converge.
    """
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got {m.shape}")
    if hermiticity_error(m) > tol:
        raise NonHermitianError(
            f"matrix deviates from Hermitian by {hermiticity_error(m):.3g}"
        )
    try:
        w, v = np.linalg.eigh(0.5 * (m + m.conj().T))
    except np.linalg.LinAlgError as exc:
        raise NoConvergenceError(str(exc)) from exc
    return EigenDecomposition(w, v)


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a, "a"), as_matrix(b, "b"))


def kron_all(factors: Sequence[np.ndarray]) -> np.ndarray:
    out = np.ones((1, 1), dtype=complex)
    for f in factors:
        out = np.kron(out, f)
    return out


def embed_local(op, target: int, n: int) -> np.ndarray:
    """Place a single-qubit operator on qubit ``target`` of an ``n``-qubit register."""
    op = as_matrix(op, "op")
    if op.shape != (2, 2):
        raise DimensionMismatchError(f"local operator must be 2x2, got {op.shape}")
    if not 0 <= target < n:
        raise IndexError(f"target {target} outside register of size {n}")
    return kron_all([op if q == target else IDENTITY for q in range(n)])


def build_phase_encoded_state(coeffs, phases) -> np.ndarray:
    """Normalized amplitudes ``N * exp(i*phase_j) * c_j``.

    Args:
        coeffs: complex weights on the computational basis.
        phases: phase (radians) attached to each basis vector.

    Returns:
        Unit-norm state vector.
    """
    c = np.asarray(coeffs, dtype=complex).ravel()
    ph = np.asarray(phases, dtype=float).ravel()
    if c.shape != ph.shape:
        raise DimensionMismatchError(
            f"{c.size} coefficients but {ph.size} phases"
        )
    norm = np.sqrt(np.sum(np.abs(c) ** 2))
    if norm == 0.0:
        raise ZeroVectorError("all coefficients vanish")
    return np.exp(1j * ph) * c / norm


def projector(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex).ravel()
    return np.outer(psi, psi.conj())


def basis_index(bits: str) -> int:
    """Index of a computational basis label such as ``"101"``."""
    return int(bits, 2)


def n_qubits_of(dim: int) -> int:
    n = int(dim).bit_length() - 1
    if dim < 2 or 2**n != dim:
        raise DimensionMismatchError(f"dimension {dim} is not a power of two")
    return n


def check_density(rho, n_qubits: int | None = None) -> np.ndarray:
    """Validate a density operator and return it as a complex array.

    Checks Hermiticity (1e-12), unit trace (1e-10) and positivity
    (smallest eigenvalue >= -1e-10).

    Raises:
        InvariantViolation: if any check fails.
    """
    m = as_matrix(rho, "rho")
    if m.shape[0] != m.shape[1]:
        raise InvariantViolation(f"density operator must be square, got {m.shape}")
    n = n_qubits_of(m.shape[0])
    if n_qubits is not None and n != n_qubits:
        raise DimensionMismatchError(f"expected {n_qubits} qubits, got {n}")
    herm = hermiticity_error(m)
    if herm > HERMITIAN_TOL:
        raise InvariantViolation(f"not Hermitian: deviation {herm:.3g}")
    tr = np.trace(m)
    if abs(tr - 1.0) > TRACE_TOL:
        raise InvariantViolation(f"trace {tr:.12g} differs from 1")
    lo = float(np.linalg.eigvalsh(m)[0])
    if lo < POSITIVITY_TOL:
        raise InvariantViolation(f"negative eigenvalue {lo:.3g}")
    return m
