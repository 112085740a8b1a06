from .base import DERIVATIVE_MODES, EvolvedFamily, PhaseRegister
from .common_reservoir import (
    CommonReservoirConfig,
    common_reservoir_amplitude,
    common_reservoir_channel,
    common_reservoir_family,
)
from .dissipative import (
    OneQubitDissipativeConfig,
    TwoQubitIndependentConfig,
    one_qubit_family,
    survival_probability,
    two_qubit_independent_family,
)
from .majorana import MajoranaConfig, bath_integral, majorana_alpha, majorana_family
from .teleportation import (
    TeleportationConfig,
    decoherence_factor,
    output_state_closed,
    resource_state,
    teleport,
    teleportation_channel,
    teleportation_family,
)

__all__ = [
    "DERIVATIVE_MODES",
    "EvolvedFamily",
    "PhaseRegister",
    "CommonReservoirConfig",
    "common_reservoir_amplitude",
    "common_reservoir_channel",
    "common_reservoir_family",
    "OneQubitDissipativeConfig",
    "TwoQubitIndependentConfig",
    "one_qubit_family",
    "survival_probability",
    "two_qubit_independent_family",
    "MajoranaConfig",
    "bath_integral",
    "majorana_alpha",
    "majorana_family",
    "TeleportationConfig",
    "decoherence_factor",
    "output_state_closed",
    "resource_state",
    "teleport",
    "teleportation_channel",
    "teleportation_family",
]
