"""Statistical distances and speeds for probability vectors and quantum states.

The quantum Fisher information is evaluated from the eigendecomposition of
the state; the Hilbert-Schmidt speed only needs a trace of the squared
derivative and never diagonalizes anything.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .exceptions import (
    DimensionMismatchError,
    InvariantViolation,
    NonPositiveInformationError,
)
from .linalg import as_matrix, check_density, hermitian_eig, hermiticity_error

QFI_SUPPORT_CUTOFF = 1e-12


def check_distribution(p) -> np.ndarray:
    """Validate a probability vector; tiny negative weights are clamped to 0."""
    w = np.asarray(p, dtype=float).ravel()
    if np.any(w < -1e-12):
        raise InvariantViolation(f"negative probability {w.min():.3g}")
    if abs(w.sum() - 1.0) > 1e-10:
        raise InvariantViolation(f"probabilities sum to {w.sum():.12g}")
    return np.clip(w, 0.0, None)


def _pair(p, q):
    p, q = check_distribution(p), check_distribution(q)
    if p.shape != q.shape:
        raise DimensionMismatchError(f"lengths differ: {p.size} vs {q.size}")
    return p, q


def hellinger_distance(p, q) -> float:
    p, q = _pair(p, q)
    return float(np.sqrt(0.5 * np.sum((np.sqrt(p) - np.sqrt(q)) ** 2)))


def l2_distance(p, q) -> float:
    p, q = _pair(p, q)
    return float(np.sqrt(0.5 * np.sum((p - q) ** 2)))


def classical_fisher_information(
    family: Callable[[float], Sequence[float]], phi0: float, h: float = 1e-5
) -> float:
    """Fisher information of a one-parameter family of distributions.

    The derivative of each outcome probability is taken by a central
    difference of step ``h``; outcomes with ``p < 1e-14`` are skipped.
    """
    if not h > 0:
        raise ValueError("step h must be positive")
    p = check_distribution(family(phi0))
    dp = (check_distribution(family(phi0 + h)) - check_distribution(family(phi0 - h))) / (2 * h)
    keep = p >= 1e-14
    return float(np.sum(dp[keep] ** 2 / p[keep]))


def check_povm(elements: Sequence) -> list[np.ndarray]:
    mats = [as_matrix(e, "POVM element") for e in elements]
    if not mats:
        raise InvariantViolation("empty POVM")
    d = mats[0].shape[0]
    total = np.zeros((d, d), dtype=complex)
    for e in mats:
        if e.shape != (d, d):
            raise DimensionMismatchError("POVM elements have different shapes")
        if hermitian_eig(e).eigenvalues[0] < -1e-10:
            raise InvariantViolation("POVM element is not positive semidefinite")
        total += e
    if np.max(np.abs(total - np.eye(d))) > 1e-10:
        raise InvariantViolation("POVM elements do not sum to identity")
    return mats


def born_probabilities(rho, povm: Sequence) -> np.ndarray:
    rho = check_density(rho)
    mats = check_povm(povm)
    if mats[0].shape != rho.shape:
        raise DimensionMismatchError(
            f"POVM acts on dimension {mats[0].shape[0]}, state has {rho.shape[0]}"
        )
    return check_distribution([np.real(np.trace(e @ rho)) for e in mats])


def _sqrtm_psd(a: np.ndarray) -> np.ndarray:
    w, v = hermitian_eig(a)
    return (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T


def _same_shape(rho, sigma):
    rho, sigma = check_density(rho), check_density(sigma)
    if rho.shape != sigma.shape:
        raise DimensionMismatchError(f"{rho.shape} vs {sigma.shape}")
    return rho, sigma


def fidelity(rho, sigma) -> float:
    """Root fidelity ``Tr sqrt(sqrt(rho) sigma sqrt(rho))``."""
    rho, sigma = _same_shape(rho, sigma)
    s = _sqrtm_psd(rho)
    inner = s @ sigma @ s
    w = hermitian_eig(0.5 * (inner + inner.conj().T)).eigenvalues
    return float(np.sum(np.sqrt(np.clip(w, 0.0, None))))


def bures_distance(rho, sigma) -> float:
    return float(np.sqrt(max(0.0, 1.0 - fidelity(rho, sigma))))


def hilbert_schmidt_distance(rho, sigma) -> float:
    rho, sigma = _same_shape(rho, sigma)
    diff = rho - sigma
    # Tr(A^2) for Hermitian A is the squared Frobenius norm
    return float(np.sqrt(0.5 * np.sum(np.abs(diff) ** 2)))


@dataclass(frozen=True)
class StateDerivative:
    """A state together with its derivative with respect to one phase."""

    state: np.ndarray
    derivative: np.ndarray

    def __post_init__(self):
        state = check_density(self.state)
        d = as_matrix(self.derivative, "derivative")
        if d.shape != state.shape:
            raise DimensionMismatchError(f"derivative {d.shape} vs state {state.shape}")
        if hermiticity_error(d) > 1e-10:
            raise InvariantViolation("derivative is not Hermitian")
        if abs(np.trace(d)) > 1e-8:
            raise InvariantViolation(f"derivative has trace {np.trace(d):.3g}")
        object.__setattr__(self, "state", state)
        object.__setattr__(self, "derivative", 0.5 * (d + d.conj().T))


def hss(sd: StateDerivative) -> float:
    """Hilbert-Schmidt speed ``sqrt(Tr[(d rho)^2] / 2)``."""
    return float(np.sqrt(0.5 * np.sum(np.abs(sd.derivative) ** 2)))


def qfi(sd: StateDerivative, support_cutoff: float = QFI_SUPPORT_CUTOFF) -> float:
    """Quantum Fisher information from the spectral decomposition of the state.

    Sums ``2 / (l_i + l_j) * |<i| d rho |j>|^2`` over eigenpairs, dropping
    pairs whose eigenvalue sum does not exceed ``support_cutoff``.
    """
    if not support_cutoff > 0:
        raise ValueError("support_cutoff must be positive")
    w, v = hermitian_eig(sd.state)
    m = v.conj().T @ sd.derivative @ v
    s = w[:, None] + w[None, :]
    keep = s > support_cutoff
    return float(max(0.0, np.sum(2.0 / s[keep] * np.abs(m[keep]) ** 2)))


def cramer_rao_bound(f: float) -> float:
    if not f > 0:
        raise NonPositiveInformationError(f"Fisher information must be positive, got {f}")
    return float(1.0 / np.sqrt(f))
