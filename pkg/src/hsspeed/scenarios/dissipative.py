"""Qubits damped by zero-temperature Lorentzian reservoirs.

The reduced dynamics is amplitude damping with survival probability
``P(t) = exp(-lam t) [cos(G t/2) + (lam/G) sin(G t/2)]^2``,
``G = sqrt(2 gamma0 lam - lam^2)``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from ..channels import RegisterChannel, amplitude_damping_from_survival
from ..exceptions import NegativeTimeError
from .base import EvolvedFamily, PhaseRegister


def _sinc(x: complex) -> complex:
    if abs(x) < 1e-4:
        return 1 - x * x / 6 + x**4 / 120
    return cmath.sin(x) / x


@dataclass(frozen=True)
class OneQubitDissipativeConfig:
    gamma0: float
    lam: float
    theta: float = math.pi / 2
    phi: float = 0.0

    def __post_init__(self):
        if not (self.gamma0 > 0 and self.lam > 0):
            raise ValueError("gamma0 and lam must be positive")


@dataclass(frozen=True)
class TwoQubitIndependentConfig:
    gamma0: float
    lam: float
    phi: float = 0.0

    def __post_init__(self):
        if not (self.gamma0 > 0 and self.lam > 0):
            raise ValueError("gamma0 and lam must be positive")


def survival_probability(cfg, t: float) -> float:
    """Excited-state survival ``P(t)``; works in both coupling regimes.

    ``G`` is complex when ``2 gamma0 < lam``; the same expression then gives
    the hyperbolic continuation. ``(lam/G) sin(G t/2)`` is written through
    ``sinc`` so ``G = 0`` needs no special branch.
    """
    if t < 0:
        raise NegativeTimeError(f"t = {t}")
    g = cmath.sqrt(2 * cfg.gamma0 * cfg.lam - cfg.lam**2)
    x = g * t / 2
    amp = cmath.cos(x) + cfg.lam * t / 2 * _sinc(x)
    p = math.exp(-cfg.lam * t) * (amp * amp).real
    return min(max(p, 0.0), 1.0)


def _damping_register(cfg, n: int):
    def channel_at(t):
        ch = amplitude_damping_from_survival(survival_probability(cfg, t))
        return RegisterChannel((ch,) * n)

    return channel_at


def one_qubit_family(cfg: OneQubitDissipativeConfig) -> EvolvedFamily:
    """``cos(theta/2)|1> + exp(i phi) sin(theta/2)|0>`` under amplitude damping."""
    half = cfg.theta / 2
    register = PhaseRegister([math.sin(half), math.cos(half)], [(0,)])
    sin_t = math.sin(cfg.theta)
    return EvolvedFamily(
        name="one-qubit",
        register=register,
        channel_at=_damping_register(cfg, 1),
        phases=(cfg.phi,),
        phase_names=("phi",),
        closed_qfi={0: lambda t, ph: survival_probability(cfg, t) * sin_t**2},
        closed_hss={0: lambda t, ph: math.sqrt(survival_probability(cfg, t)) / 2 * abs(sin_t)},
    )


def two_qubit_independent_family(cfg: TwoQubitIndependentConfig) -> EvolvedFamily:
    """``(exp(i phi)|10> + |01> + |00>)/sqrt(3)`` with each qubit damped separately."""
    # |00>, |01>, |10>, |11>
    register = PhaseRegister([1, 1, 1, 0], [(2,)])

    def qfi(t, ph):
        return 8 * survival_probability(cfg, t) / 9

    def hss(t, ph):
        p = survival_probability(cfg, t)
        return math.sqrt(p * (p + 1)) / 3

    return EvolvedFamily(
        name="two-qubit-independent",
        register=register,
        channel_at=_damping_register(cfg, 2),
        phases=(cfg.phi,),
        phase_names=("phi",),
        closed_qfi={0: qfi},
        closed_hss={0: hss},
    )
