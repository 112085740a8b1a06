"""Registers of Majorana (topological) qubits coupled to fermionic Ohmic-like baths.

Each noisy qubit decoheres through ``majorana_channel(alpha(t))`` with
``alpha(t) = exp(-2 B^2 |beta| I_Q(t))``; noiseless qubits are untouched.

The W-register closed forms below were checked against the full channel
pipeline and hold when the single noisy qubit is qubit 2, the one excited
in the ``|001>`` component. The GHZ QFI form holds only while at least one
qubit stays noiseless (``m < n``); its HSS form holds for every ``m``.

The two ``I_Q`` branches are kept with their given prefactors. They do not
join continuously: as ``Q -> 1`` the general branch tends to twice the
Ohmic ``2F2`` branch.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from ..channels import RegisterChannel, majorana_channel
from ..exceptions import NearBranchPointWarning, NegativeTimeError
from ..specfun import DEFAULT_CONTROL, SeriesControl, gamma_fn, hyp1f1, hyp2f2_11_3half_2
from .base import EvolvedFamily, PhaseRegister

STATE_KINDS = ("w", "ghz")
W_CLOSED_FORM_NOISY = (2,)


@dataclass(frozen=True)
class MajoranaConfig:
    """``noisy_qubits`` defaults to the first ``m`` qubits when left ``None``."""

    n: int
    m: int
    q_exponent: float = 1.0
    b_field: float = 1.0
    gamma_cap0: float = 1.0
    state_kind: str = "ghz"
    phases: tuple = (0.0,)
    noisy_qubits: tuple | None = None

    def __post_init__(self):
        if self.state_kind not in STATE_KINDS:
            raise ValueError(f"state_kind must be one of {STATE_KINDS}")
        if not 1 <= self.m <= self.n:
            raise ValueError("need 1 <= m <= n")
        if self.q_exponent < 0:
            raise ValueError("Ohmic exponent must be non-negative")
        if not self.gamma_cap0 > 0:
            raise ValueError("cutoff gamma_cap0 must be positive")
        if self.state_kind == "w" and self.n != 3:
            raise ValueError("the W register is defined for n = 3")
        want = 2 if self.state_kind == "w" else 1
        phases = tuple(float(p) for p in self.phases)
        if len(phases) == 1 and want == 2:
            phases = (phases[0], 0.0)
        if len(phases) != want:
            raise ValueError(f"{self.state_kind} register takes {want} phase(s)")
        object.__setattr__(self, "phases", phases)
        noisy = tuple(range(self.m)) if self.noisy_qubits is None else tuple(self.noisy_qubits)
        if len(noisy) != self.m or len(set(noisy)) != self.m:
            raise ValueError("noisy_qubits must list m distinct qubits")
        if any(not 0 <= q < self.n for q in noisy):
            raise ValueError("noisy qubit index outside the register")
        object.__setattr__(self, "noisy_qubits", tuple(sorted(noisy)))


def bath_beta(cfg: MajoranaConfig) -> float:
    q = cfg.q_exponent
    return -4 * math.pi / gamma_fn(q + 1) * (1 / cfg.gamma_cap0) ** (q + 1)


def bath_integral(cfg: MajoranaConfig, t: float, ctl: SeriesControl = DEFAULT_CONTROL) -> float:
    """``I_Q(t)``; the Ohmic case ``Q == 1`` uses the 2F2 branch."""
    if t < 0:
        raise NegativeTimeError(f"t = {t}")
    q, g0 = cfg.q_exponent, cfg.gamma_cap0
    z = -((t * g0) ** 2) / 4
    if q == 1:
        return 0.5 * (t * g0) ** 2 * hyp2f2_11_3half_2(z, ctl)
    if abs(q - 1) < 0.01:
        warnings.warn(
            f"Ohmic exponent {q} is within 0.01 of the Q = 1 branch point",
            NearBranchPointWarning,
            stacklevel=2,
        )
    a = (q - 1) / 2
    return 2 * g0 ** (q - 1) * gamma_fn(a) * (1 - hyp1f1(a, 0.5, z, ctl))


def majorana_alpha(cfg: MajoranaConfig, t: float, ctl: SeriesControl = DEFAULT_CONTROL) -> float:
    exponent = -2 * cfg.b_field**2 * abs(bath_beta(cfg)) * bath_integral(cfg, t, ctl)
    return min(1.0, math.exp(exponent))


def _register(cfg: MajoranaConfig) -> PhaseRegister:
    dim = 2**cfg.n
    coeffs = [0.0] * dim
    if cfg.state_kind == "w":
        # e^{i phi1}|100> + |010> + e^{i phi2}|001>
        coeffs[4] = coeffs[2] = coeffs[1] = 1.0
        return PhaseRegister(coeffs, [(4,), (1,)])
    coeffs[0] = coeffs[dim - 1] = 1.0
    return PhaseRegister(coeffs, [(0,)])


def _closed_forms(cfg: MajoranaConfig):
    def alpha(t):
        return majorana_alpha(cfg, t)

    if cfg.state_kind == "w":
        if cfg.noisy_qubits != W_CLOSED_FORM_NOISY:
            return {}, {}
        qfi = {
            0: lambda t, ph: 2 / 9 * (5 - 2 / (alpha(t) ** 2 + 1)),
            1: lambda t, ph: 16 * alpha(t) ** 2 / (9 * alpha(t) ** 2 + 9),
        }
        hss = {
            0: lambda t, ph: (alpha(t) ** 2 + 1) / (3 * math.sqrt(2)),
            1: lambda t, ph: math.sqrt(2) * alpha(t) / 3,
        }
        return qfi, hss
    m = cfg.m
    hss = {0: lambda t, ph: alpha(t) ** m / 2}
    if m == cfg.n:
        return {}, hss
    qfi = {0: lambda t, ph: (2 * alpha(t) ** 2 / (1 + alpha(t) ** 2)) ** m}
    return qfi, hss


def majorana_family(cfg: MajoranaConfig) -> EvolvedFamily:
    def channel_at(t):
        ch = majorana_channel(majorana_alpha(cfg, t))
        return RegisterChannel(tuple(ch if q in cfg.noisy_qubits else None for q in range(cfg.n)))

    qfi, hss = _closed_forms(cfg)
    names = ("phi1", "phi2") if cfg.state_kind == "w" else ("phi",)
    return EvolvedFamily(
        name=f"majorana-{cfg.state_kind}",
        register=_register(cfg),
        channel_at=channel_at,
        phases=cfg.phases,
        phase_names=names,
        closed_qfi=qfi,
        closed_hss=hss,
    )
