"""Two-qubit teleportation through a resource degraded by a spin bath.

The generalized protocol acts on the input as a Pauli channel with weights
``p_ij = Tr(B_i rho_res) Tr(B_j rho_res)``, so it is represented directly as
a Kraus channel with operators ``sqrt(p_ij) sigma_i (x) sigma_j``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from ..channels import KrausChannel, apply
from ..exceptions import DimensionMismatchError, NegativeTimeError, WeightsNotNormalizedError
from ..linalg import PAULIS, check_density, kron
from .base import EvolvedFamily, PhaseRegister

_PHI_PLUS = np.array([1, 0, 0, 1], dtype=complex) / math.sqrt(2)
BELL_0 = np.outer(_PHI_PLUS, _PHI_PLUS.conj())
BELL_PROJECTORS = tuple(kron(PAULIS[0], s) @ BELL_0 @ kron(PAULIS[0], s) for s in PAULIS)


@dataclass(frozen=True)
class TeleportationConfig:
    r: float
    p: float
    theta: float = math.pi / 2
    phi: float = 0.0
    omega_sum: float = 0.0
    env_spins: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if not 0.0 < self.r <= 1.0:
            raise ValueError("r must lie in (0, 1]")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("p must lie in [0, 1]")
        object.__setattr__(self, "env_spins", tuple(tuple(map(float, s)) for s in self.env_spins))
        if any(len(s) != 3 for s in self.env_spins):
            raise ValueError("each environment spin needs (h, eps, lam)")


def decoherence_factor(cfg: TeleportationConfig, t: float) -> float:
    if t < 0:
        raise NegativeTimeError(f"t = {t}")
    q = 1.0
    for h, eps, lam in cfg.env_spins:
        g2 = (eps + lam) ** 2
        w2 = h * h + g2
        if w2 == 0.0:
            continue
        q *= 1.0 - 2.0 * g2 / w2 * math.sin(t * math.sqrt(w2)) ** 2
    return q


def coherence_amplitude(cfg: TeleportationConfig, t: float) -> float:
    """``A(t) = sqrt(p (1-p)) r Q(t)``."""
    return math.sqrt(cfg.p * (1 - cfg.p)) * cfg.r * decoherence_factor(cfg, t)


def resource_state(cfg: TeleportationConfig, t: float) -> np.ndarray:
    mix = (1 - cfg.r) / 4
    rho = np.diag([mix + cfg.r * (1 - cfg.p), mix, mix, mix + cfg.r * cfg.p]).astype(complex)
    c = coherence_amplitude(cfg, t) * cmath.exp(-1j * cfg.omega_sum * t)
    rho[0, 3] = c
    rho[3, 0] = c.conjugate()
    return rho


def bell_weights(resource) -> np.ndarray:
    """Overlaps ``Tr(B_i rho_res)`` for ``i = 0, x, y, z``."""
    res = check_density(resource, 2)
    w = np.array([np.real(np.trace(b @ res)) for b in BELL_PROJECTORS])
    return np.clip(w, 0.0, None)


def teleportation_channel(resource) -> KrausChannel:
    w = bell_weights(resource)
    pij = np.outer(w, w)
    if abs(pij.sum() - 1.0) > 1e-10:
        raise WeightsNotNormalizedError(f"teleportation weights sum to {pij.sum():.12g}")
    ops = [
        math.sqrt(pij[i, j]) * kron(PAULIS[i], PAULIS[j])
        for i in range(4)
        for j in range(4)
        if pij[i, j] > 0
    ]
    return KrausChannel(tuple(ops), "teleportation")


def teleport(resource, rho_in) -> np.ndarray:
    rho_in = check_density(rho_in)
    if rho_in.shape != (4, 4):
        raise DimensionMismatchError(f"input must be a two-qubit state, got {rho_in.shape}")
    return apply(teleportation_channel(resource), rho_in)


def output_state_closed(cfg: TeleportationConfig, t: float, phi: float | None = None) -> np.ndarray:
    """Closed-form teleported state, with the coherence factor ``cos^2((W1+W2) t)``."""
    phi = cfg.phi if phi is None else phi
    big_r = (1 - cfg.r) / 4
    a2 = coherence_amplitude(cfg, t) ** 2
    c2 = math.cos(cfg.omega_sum * t) ** 2
    edge = 4 * big_r**2 + 2 * big_r * cfg.r
    mid = 4 * big_r * cfg.r + cfg.r**2
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = rho[3, 3] = edge
    rho[1, 1] = mid * math.sin(cfg.theta / 2) ** 2 + 4 * big_r**2
    rho[2, 2] = mid * math.cos(cfg.theta / 2) ** 2 + 4 * big_r**2
    rho[1, 2] = 2 * cmath.exp(1j * phi) * math.sin(cfg.theta) * a2 * c2
    rho[2, 1] = rho[1, 2].conjugate()
    return rho


def closed_qfi(cfg: TeleportationConfig, t: float) -> float:
    a = coherence_amplitude(cfg, t)
    c = math.cos(cfg.omega_sum * t)
    return 32 * a**4 * c**4 * math.sin(cfg.theta) ** 2 / (1 + cfg.r**2)


def closed_hss(cfg: TeleportationConfig, t: float) -> float:
    a = coherence_amplitude(cfg, t)
    c = math.cos(cfg.omega_sum * t)
    return 2 * a**2 * c**2 * abs(math.sin(cfg.theta))


def teleportation_family(cfg: TeleportationConfig) -> EvolvedFamily:
    """Input ``cos(theta/2)|10> + sin(theta/2) e^{i phi}|01>`` teleported with ``rho_res(t)``."""
    half = cfg.theta / 2
    register = PhaseRegister([0, math.sin(half), math.cos(half), 0], [(1,)])
    return EvolvedFamily(
        name="teleportation",
        register=register,
        channel_at=lambda t: teleportation_channel(resource_state(cfg, t)),
        phases=(cfg.phi,),
        phase_names=("phi",),
        closed_qfi={0: lambda t, ph: closed_qfi(cfg, t)},
        closed_hss={0: lambda t, ph: closed_hss(cfg, t)},
    )
