"""Two qubits sharing one Lorentzian reservoir, in dimensionless time ``tau``.

With ``|psi+> = r1|10> + r2|01>`` and ``|psi-> = r2|10> - r1|01>``, the
subradiant component ``|psi->`` is frozen while ``|psi+>`` decays with
amplitude ``F(tau)``. On the zero- and one-excitation sector this is the
two-operator channel

    K0 = |00><00| + |psi-><psi-| + F |psi+><psi+| + |11><11|
    K1 = sqrt(1 - F^2) |00><psi+|

The ``|11><11|`` block only keeps ``K0`` complete; no family here puts
weight on ``|11>``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from ..channels import KrausChannel
from .base import EvolvedFamily, PhaseRegister
from .dissipative import _sinc

# global indices
_I00, _I01, _I10, _I11 = 0, 1, 2, 3


@dataclass(frozen=True)
class CommonReservoirConfig:
    r1: float
    big_r: float
    phi: float = math.pi / 4

    def __post_init__(self):
        if not 0.0 <= self.r1 <= 1.0:
            raise ValueError("r1 must lie in [0, 1]")
        if not self.big_r > 0:
            raise ValueError("big_r must be positive")

    @property
    def r2(self) -> float:
        return math.sqrt(1.0 - self.r1**2)


def common_reservoir_amplitude(cfg: CommonReservoirConfig, tau: float) -> float:
    """Decay amplitude ``F(tau)`` of the superradiant state; oscillates for R > 1/2."""
    if tau < 0:
        raise ValueError(f"tau = {tau}")
    d = cmath.sqrt(1 - 4 * cfg.big_r**2)
    x = tau * d / 2
    value = math.exp(-tau / 2) * (cmath.cosh(x) + tau / 2 * _sinc(1j * x))
    return value.real


def _bright_dark(cfg: CommonReservoirConfig):
    plus = np.zeros(4, dtype=complex)
    minus = np.zeros(4, dtype=complex)
    plus[_I10], plus[_I01] = cfg.r1, cfg.r2
    minus[_I10], minus[_I01] = cfg.r2, -cfg.r1
    return plus, minus


def common_reservoir_channel(cfg: CommonReservoirConfig, tau: float) -> KrausChannel:
    amp = common_reservoir_amplitude(cfg, tau)
    plus, minus = _bright_dark(cfg)
    k0 = np.outer(minus, minus) + amp * np.outer(plus, plus)
    k0[_I00, _I00] = k0[_I11, _I11] = 1.0
    k1 = np.zeros((4, 4), dtype=complex)
    k1[_I00, :] = math.sqrt(max(0.0, 1.0 - amp * amp)) * plus
    return KrausChannel((k0, k1), f"common-reservoir(tau={tau:.6g})")


def excitation_amplitudes(cfg: CommonReservoirConfig, tau: float, phi: float) -> tuple:
    """``(c1, c2)``: amplitudes on ``|10>`` and ``|01>`` for the input (|10> + e^{i phi}|01>)/sqrt 2."""
    amp = common_reservoir_amplitude(cfg, tau)
    e = cmath.exp(1j * phi)
    beta_p = (cfg.r1 + cfg.r2 * e) / math.sqrt(2)
    beta_m = (cfg.r2 - cfg.r1 * e) / math.sqrt(2)
    c1 = cfg.r2 * beta_m + cfg.r1 * amp * beta_p
    c2 = -cfg.r1 * beta_m + cfg.r2 * amp * beta_p
    return c1, c2


def reduced_state(cfg: CommonReservoirConfig, tau: float, phi: float) -> np.ndarray:
    """Published reduced density matrix, assembled directly from ``c1, c2``."""
    c1, c2 = excitation_amplitudes(cfg, tau, phi)
    rho = np.zeros((4, 4), dtype=complex)
    rho[_I10, _I10] = abs(c1) ** 2
    rho[_I01, _I01] = abs(c2) ** 2
    rho[_I10, _I01] = c1 * c2.conjugate()
    rho[_I01, _I10] = c1.conjugate() * c2
    rho[_I00, _I00] = 1 - abs(c1) ** 2 - abs(c2) ** 2
    return rho


def closed_hss(cfg: CommonReservoirConfig, tau: float, phi: float) -> float:
    f2 = common_reservoir_amplitude(cfg, tau) ** 2
    r1, r2 = cfg.r1, cfg.r2
    radicand = (
        f2 * r1**4
        - 2 * (f2 - 1) ** 2 * r1**2 * r2**2 * math.cos(2 * phi)
        + 2 * (f2 * f2 - f2 + 1) * r1**2 * r2**2
        + f2 * r2**4
    )
    return 0.5 * (r1**2 + r2**2) * math.sqrt(max(radicand, 0.0))


def common_reservoir_family(cfg: CommonReservoirConfig) -> EvolvedFamily:
    # the QFI has no compact closed form; only the HSS is attached
    register = PhaseRegister([0, 1, 1, 0], [(_I01,)])
    return EvolvedFamily(
        name="common-reservoir",
        register=register,
        channel_at=lambda tau: common_reservoir_channel(cfg, tau),
        phases=(cfg.phi,),
        phase_names=("phi",),
        closed_hss={0: lambda tau, ph: closed_hss(cfg, tau, ph[0])},
        time_label="tau",
    )
