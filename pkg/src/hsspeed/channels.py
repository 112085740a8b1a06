"""Kraus channels on qubits and their tensor-product action on registers."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .exceptions import DimensionMismatchError, InvariantViolation, OutOfRangeError
from .linalg import as_matrix, check_density, kron_all, n_qubits_of

COMPLETENESS_TOL = 1e-10


def completeness_error(operators: Sequence[np.ndarray]) -> float:
    d = operators[0].shape[1]
    total = sum(k.conj().T @ k for k in operators)
    return float(np.max(np.abs(total - np.eye(d))))


@dataclass(frozen=True)
class KrausChannel:
    operators: tuple
    label: str = ""

    def __post_init__(self):
        ops = tuple(as_matrix(k, "Kraus operator") for k in self.operators)
        if not ops:
            raise InvariantViolation("a channel needs at least one Kraus operator")
        d = ops[0].shape[0]
        if any(k.shape != (d, d) for k in ops):
            raise DimensionMismatchError("Kraus operators must share one square shape")
        err = completeness_error(ops)
        if err > COMPLETENESS_TOL:
            raise InvariantViolation(
                f"channel {self.label!r} is not trace preserving: {err:.3g}"
            )
        object.__setattr__(self, "operators", ops)

    @property
    def dim(self) -> int:
        return self.operators[0].shape[0]

    def map(self, a: np.ndarray) -> np.ndarray:
        """Apply the linear map to any matrix, not just a state."""
        return sum(k @ a @ k.conj().T for k in self.operators)


def identity_channel(dim: int = 2) -> KrausChannel:
    return KrausChannel((np.eye(dim, dtype=complex),), "identity")


def apply(ch: KrausChannel, rho) -> np.ndarray:
    rho = check_density(rho)
    if rho.shape[0] != ch.dim:
        raise DimensionMismatchError(f"channel dimension {ch.dim}, state {rho.shape[0]}")
    return check_density(ch.map(rho))


def amplitude_damping_from_survival(p_survive: float) -> KrausChannel:
    """Amplitude damping with excited-state survival probability ``p_survive``.

    In the ``|0>, |1>`` ordering (``|1>`` excited) the operators are
    ``diag(1, sqrt(p))`` and ``sqrt(1-p) |0><1|``: populations of ``|1>``
    scale by ``p`` and coherences by ``sqrt(p)``.
    """
    if not 0.0 <= p_survive <= 1.0:
        raise OutOfRangeError(f"survival probability {p_survive} outside [0, 1]")
    k0 = np.diag([1.0, np.sqrt(p_survive)]).astype(complex)
    k1 = np.zeros((2, 2), dtype=complex)
    k1[0, 1] = np.sqrt(1.0 - p_survive)
    return KrausChannel((k0, k1), f"amplitude-damping(P={p_survive:.6g})")


def majorana_channel(alpha: float) -> KrausChannel:
    """Four-operator noise channel of a Majorana-mode qubit.

    ``alpha = 1`` is the identity and ``alpha = 0`` maps every state to I/2.
    Coherences scale by ``alpha`` and population imbalance by ``alpha**2``.
    """
    if not 0.0 <= alpha <= 1.0:
        raise OutOfRangeError(f"alpha {alpha} outside [0, 1]")
    off = np.sqrt((1.0 - alpha**2) / 2.0)
    k1 = np.diag([(alpha - 1) / 2, (1 - alpha) / 2]).astype(complex)
    k2 = np.diag([(alpha + 1) / 2, (alpha + 1) / 2]).astype(complex)
    k3 = np.array([[0, off], [0, 0]], dtype=complex)
    k4 = np.array([[0, 0], [off, 0]], dtype=complex)
    return KrausChannel((k1, k2, k3, k4), f"majorana(alpha={alpha:.6g})")


@dataclass(frozen=True)
class RegisterChannel:
    """Independent single-qubit channels; ``None`` marks a noiseless qubit."""

    per_qubit: tuple
    _kraus: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        chans = tuple(self.per_qubit)
        for ch in chans:
            if ch is not None and ch.dim != 2:
                raise DimensionMismatchError("register channels act qubit by qubit")
        object.__setattr__(self, "per_qubit", chans)
        factors = [(np.eye(2, dtype=complex),) if ch is None else ch.operators for ch in chans]
        ops = tuple(kron_all(combo) for combo in itertools.product(*factors))
        object.__setattr__(self, "_kraus", ops)

    @property
    def n(self) -> int:
        return len(self.per_qubit)

    @property
    def operators(self) -> tuple:
        return self._kraus

    def map(self, a: np.ndarray) -> np.ndarray:
        return sum(k @ a @ k.conj().T for k in self._kraus)


def apply_register(rc: RegisterChannel, rho) -> np.ndarray:
    rho = check_density(rho)
    if n_qubits_of(rho.shape[0]) != rc.n:
        raise DimensionMismatchError(
            f"register has {rc.n} qubits, state has {n_qubits_of(rho.shape[0])}"
        )
    return check_density(rc.map(rho))
