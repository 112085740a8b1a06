"""Built-in scenario configurations and their default sweep grids."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .analysis import SweepGrid
from .scenarios import (
    CommonReservoirConfig,
    EvolvedFamily,
    MajoranaConfig,
    OneQubitDissipativeConfig,
    TeleportationConfig,
    TwoQubitIndependentConfig,
    common_reservoir_family,
    majorana_family,
    one_qubit_family,
    teleportation_family,
    two_qubit_independent_family,
)


@dataclass(frozen=True)
class Preset:
    name: str
    model: str
    build: Callable[[], EvolvedFamily]
    phase_index: int
    grid: SweepGrid
    has_zeros: bool = False
    # QFI expressed through the HSS, where a closed relation exists
    relation: Callable[[float], float] | None = None


def one_qubit_relation(s: float) -> float:
    return 4 * s * s


def two_qubit_relation(s: float) -> float:
    return 4 / 9 * (math.sqrt(1 + 36 * s * s) - 1)


def teleportation_relation(r: float) -> Callable[[float], float]:
    return lambda s: 8 * s * s / (1 + r * r)


def w_phi1_relation(s: float) -> float:
    return 10 / 9 - 2 * math.sqrt(2) / (27 * s)


def w_phi2_relation(s: float) -> float:
    return 16 * s * s / (9 * s * s + 2)


def ghz_relation(m: int) -> Callable[[float], float]:
    def rel(s: float) -> float:
        return 2 ** (m + 2) * s * s * (4 ** (1 / m) * s ** (2 / m) + 1) ** (-m)

    return rel


FIG1_GRID = SweepGrid(0.0, 3.0, 600)
TELEPORT_SPINS = ((1.0, 0.6, 0.4), (0.5, 0.3, 0.2))

STRONG = OneQubitDissipativeConfig(gamma0=5.0, lam=1.0, theta=math.pi / 2, phi=math.pi / 4)
WEAK = OneQubitDissipativeConfig(gamma0=0.1, lam=1.0, theta=math.pi / 2, phi=math.pi / 4)


def _w(index: int) -> Preset:
    cfg = MajoranaConfig(
        n=3, m=1, q_exponent=3.0, b_field=0.3, state_kind="w",
        phases=(0.3, 0.9), noisy_qubits=(2,),
    )
    return Preset(
        f"majorana-w-phi{index + 1}", "majorana", lambda: majorana_family(cfg),
        index, SweepGrid(0.0, 8.0, 500), has_zeros=False,
        relation=(w_phi1_relation, w_phi2_relation)[index],
    )


def _common(phi: float, label: str) -> Preset:
    cfg = CommonReservoirConfig(r1=0.3, big_r=8.0, phi=phi)
    return Preset(f"common-reservoir-{label}", "common-reservoir",
                  lambda: common_reservoir_family(cfg), 0, FIG1_GRID)


PRESETS: dict[str, Preset] = {
    p.name: p
    for p in [
        Preset("one-qubit-strong", "one-qubit", lambda: one_qubit_family(STRONG), 0,
               SweepGrid(0.0, 6.0, 500), has_zeros=True, relation=one_qubit_relation),
        Preset("one-qubit-weak", "one-qubit", lambda: one_qubit_family(WEAK), 0,
               SweepGrid(0.0, 6.0, 500), relation=one_qubit_relation),
        Preset("two-qubit-independent", "two-qubit-independent",
               lambda: two_qubit_independent_family(TwoQubitIndependentConfig(5.0, 1.0, 0.4)),
               0, SweepGrid(0.0, 6.0, 500), has_zeros=True, relation=two_qubit_relation),
        _common(math.pi / 4, "fig1"),
        _common(0.3, "phi0.3"),
        _common(1.2, "phi1.2"),
        Preset("teleportation", "teleportation",
               lambda: teleportation_family(TeleportationConfig(
                   r=0.8, p=0.3, theta=1.0, phi=0.5, omega_sum=0.7, env_spins=TELEPORT_SPINS)),
               0, SweepGrid(0.0, 5.0, 500), has_zeros=True, relation=teleportation_relation(0.8)),
        _w(0),
        _w(1),
        Preset("majorana-ghz", "majorana",
               lambda: majorana_family(MajoranaConfig(
                   n=3, m=2, q_exponent=3.0, b_field=0.3, state_kind="ghz", phases=(0.4,))),
               0, SweepGrid(0.0, 8.0, 500), relation=ghz_relation(2)),
        Preset("majorana-ghz-ohmic", "majorana",
               lambda: majorana_family(MajoranaConfig(
                   n=3, m=2, q_exponent=1.0, b_field=1.0, state_kind="ghz", phases=(0.4,))),
               0, SweepGrid(0.0, 4.0, 500), has_zeros=True, relation=ghz_relation(2)),
    ]
}


def presets_for(model: str | None) -> list[Preset]:
    if model in (None, "all"):
        return list(PRESETS.values())
    found = [p for p in PRESETS.values() if p.model == model]
    if not found:
        raise KeyError(model)
    return found
