"""Quantum Fisher information and Hilbert-Schmidt speed of phase-encoded states
evolving through open-system channels."""

from .analysis import (
    CoincidenceReport,
    NonMarkovReport,
    SpeedSample,
    SweepGrid,
    coincidence,
    detect_zeros,
    extrema,
    nonmarkov_intervals,
    sweep,
)
from .channels import (
    KrausChannel,
    RegisterChannel,
    amplitude_damping_from_survival,
    apply,
    apply_register,
    identity_channel,
    majorana_channel,
)
from .linalg import build_phase_encoded_state, embed_local, hermitian_eig, kron
from .specfun import SeriesControl, gamma_fn, hyp1f1, hyp2f2_11_3half_2
from .speeds import (
    StateDerivative,
    bures_distance,
    classical_fisher_information,
    cramer_rao_bound,
    fidelity,
    hellinger_distance,
    hilbert_schmidt_distance,
    hss,
    qfi,
)

__version__ = "0.1.0"

__all__ = [
    "CoincidenceReport",
    "NonMarkovReport",
    "SpeedSample",
    "SweepGrid",
    "coincidence",
    "detect_zeros",
    "extrema",
    "nonmarkov_intervals",
    "sweep",
    "KrausChannel",
    "RegisterChannel",
    "amplitude_damping_from_survival",
    "apply",
    "apply_register",
    "identity_channel",
    "majorana_channel",
    "build_phase_encoded_state",
    "embed_local",
    "hermitian_eig",
    "kron",
    "SeriesControl",
    "gamma_fn",
    "hyp1f1",
    "hyp2f2_11_3half_2",
    "StateDerivative",
    "bures_distance",
    "classical_fisher_information",
    "cramer_rao_bound",
    "fidelity",
    "hellinger_distance",
    "hilbert_schmidt_distance",
    "hss",
    "qfi",
]
