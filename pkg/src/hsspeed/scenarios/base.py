"""Phase-encoded initial registers and the evolved families built on them."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np

from ..linalg import build_phase_encoded_state, check_density, projector
from ..speeds import StateDerivative

DERIVATIVE_MODES = ("linearity", "finite-difference")
DEFAULT_PHASE_STEP = 1e-6


@dataclass(frozen=True)
class PhaseRegister:
    """Pure register state ``N * sum_j exp(i*phi_j) c_j |j>``.

    ``carriers[k]`` lists the basis indices whose amplitude picks up the
    ``k``-th phase parameter.
    """

    coeffs: np.ndarray
    carriers: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", np.asarray(self.coeffs, dtype=complex))
        object.__setattr__(self, "carriers", tuple(tuple(c) for c in self.carriers))

    @property
    def n_phases(self) -> int:
        return len(self.carriers)

    def basis_phases(self, phases: Sequence[float]) -> np.ndarray:
        if len(phases) != self.n_phases:
            raise ValueError(f"expected {self.n_phases} phases, got {len(phases)}")
        out = np.zeros(self.coeffs.size)
        for phi, idx in zip(phases, self.carriers):
            out[list(idx)] += phi
        return out

    def amplitudes(self, phases: Sequence[float]) -> np.ndarray:
        return build_phase_encoded_state(self.coeffs, self.basis_phases(phases))

    def density(self, phases: Sequence[float]) -> np.ndarray:
        return projector(self.amplitudes(phases))

    def derivative(self, phases: Sequence[float], index: int) -> np.ndarray:
        """Exact ``d rho_0 / d phi_index = i [G, rho_0]`` with G the carrier projector."""
        rho = self.density(phases)
        g = np.zeros(self.coeffs.size)
        g[list(self.carriers[index])] = 1.0
        return 1j * (g[:, None] * rho - rho * g[None, :])


ClosedForm = Callable[[float, Sequence[float]], float]


@dataclass(frozen=True)
class EvolvedFamily:
    """A register pushed through a time-dependent linear map.

    ``channel_at(t)`` returns any object with a ``map(matrix)`` method that is
    linear in its argument, so the phase derivative of the evolved state is
    the image of the initial derivative.
    """

    name: str
    register: PhaseRegister
    channel_at: Callable[[float], object]
    phases: tuple
    phase_names: tuple
    closed_qfi: Mapping[int, ClosedForm] = field(default_factory=dict)
    closed_hss: Mapping[int, ClosedForm] = field(default_factory=dict)
    time_label: str = "t"

    def _phases(self, phases):
        return tuple(self.phases if phases is None else phases)

    def state_at(self, t: float, phases=None) -> np.ndarray:
        return check_density(self.channel_at(t).map(self.register.density(self._phases(phases))))

    def evaluate(
        self,
        t: float,
        index: int,
        phases=None,
        mode: str = "linearity",
        h: float = DEFAULT_PHASE_STEP,
    ) -> StateDerivative:
        """State and its derivative with respect to phase ``index`` at time ``t``."""
        if mode not in DERIVATIVE_MODES:
            raise ValueError(f"unknown derivative mode {mode!r}")
        if not 0 <= index < self.register.n_phases:
            raise IndexError(f"{self.name} has no phase index {index}")
        ph = self._phases(phases)
        ch = self.channel_at(t)
        rho = check_density(ch.map(self.register.density(ph)))
        if mode == "linearity":
            d = ch.map(self.register.derivative(ph, index))
        else:
            up, down = list(ph), list(ph)
            up[index] += h
            down[index] -= h
            d = (ch.map(self.register.density(up)) - ch.map(self.register.density(down))) / (2 * h)
        return StateDerivative(rho, d)

    def closed(self, t: float, index: int, phases=None) -> tuple:
        """Closed-form ``(qfi, hss)`` at ``t``; ``None`` where no formula exists."""
        ph = self._phases(phases)
        f = self.closed_qfi.get(index)
        s = self.closed_hss.get(index)
        return (None if f is None else f(t, ph), None if s is None else s(t, ph))
