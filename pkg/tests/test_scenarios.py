import math
import warnings

import numpy as np
import numpy.testing as npt
import pytest
from scipy.optimize import brentq

from hsspeed.channels import completeness_error
from hsspeed.exceptions import NearBranchPointWarning, NegativeTimeError, WeightsNotNormalizedError
from hsspeed.linalg import check_density, projector
from hsspeed.presets import PRESETS
from hsspeed.scenarios import (
    CommonReservoirConfig,
    MajoranaConfig,
    OneQubitDissipativeConfig,
    TeleportationConfig,
    TwoQubitIndependentConfig,
    bath_integral,
    common_reservoir_amplitude,
    common_reservoir_channel,
    common_reservoir_family,
    decoherence_factor,
    majorana_alpha,
    majorana_family,
    one_qubit_family,
    output_state_closed,
    resource_state,
    survival_probability,
    teleport,
    teleportation_channel,
    teleportation_family,
    two_qubit_independent_family,
)
from hsspeed.scenarios.common_reservoir import closed_hss, excitation_amplitudes, reduced_state
from hsspeed.scenarios.majorana import bath_beta
from hsspeed.scenarios.teleportation import BELL_0, bell_weights
from hsspeed.speeds import hss, qfi

from .oracles import mp_1f1, mp_2f2

STRONG = OneQubitDissipativeConfig(5.0, 1.0)
WEAK = OneQubitDissipativeConfig(0.1, 1.0)


def _speeds(fam, t, index=0, mode="linearity"):
    sd = fam.evaluate(t, index, mode=mode)
    return qfi(sd), hss(sd)


# --- one qubit ------------------------------------------------------------

def test_survival_at_zero_and_negative_time():
    assert survival_probability(STRONG, 0.0) == 1.0
    with pytest.raises(NegativeTimeError):
        survival_probability(STRONG, -1.0)


def _first_root_of_p(cfg):
    g = math.sqrt(2 * cfg.gamma0 * cfg.lam - cfg.lam**2)
    # amplitude cos(G t/2) + (lam/G) sin(G t/2) changes sign before G t/2 = pi
    f = lambda t: math.cos(g * t / 2) + cfg.lam / g * math.sin(g * t / 2)
    return brentq(f, 1e-9, 2 * math.pi / g, xtol=1e-15)


def test_survival_first_zero_matches_root_finder():
    root = _first_root_of_p(STRONG)
    assert survival_probability(STRONG, root) <= 1e-20
    assert survival_probability(STRONG, root - 1e-3) > 0


def test_survival_weak_coupling_is_monotone_positive():
    ts = np.linspace(0, 20, 2001)[1:]
    p = np.array([survival_probability(WEAK, t) for t in ts])
    assert np.all((p > 0) & (p <= 1))
    assert np.all(np.diff(p) < 0)


def test_survival_matches_hyperbolic_form_in_weak_regime():
    lam, g0, t = 1.0, 0.1, 3.7
    k = math.sqrt(lam**2 - 2 * g0 * lam)
    ref = math.exp(-lam * t) * (math.cosh(k * t / 2) + lam / k * math.sinh(k * t / 2)) ** 2
    assert survival_probability(WEAK, t) == pytest.approx(ref, rel=1e-13)


def test_survival_continuous_through_critical_coupling():
    t = 2.0
    crit = survival_probability(OneQubitDissipativeConfig(0.5, 1.0), t)
    near = survival_probability(OneQubitDissipativeConfig(0.5 + 1e-9, 1.0), t)
    assert crit == pytest.approx(math.exp(-t) * (1 + t / 2) ** 2, rel=1e-12)
    assert near == pytest.approx(crit, rel=1e-8)


def test_one_qubit_start_values():
    fam = one_qubit_family(STRONG)
    f, s = _speeds(fam, 0.0)
    assert f == pytest.approx(1, rel=1e-12)
    assert s == pytest.approx(0.5, rel=1e-12)


def test_one_qubit_without_phase_dependence():
    fam = one_qubit_family(OneQubitDissipativeConfig(5.0, 1.0, theta=0.0))
    for t in (0.0, 0.4, 2.0):
        assert _speeds(fam, t) == (0.0, 0.0)


def test_one_qubit_hand_values():
    p, theta = 0.49, math.pi / 3
    f = p * math.sin(theta) ** 2
    s = 0.7 / 2 * math.sin(theta)
    assert f == pytest.approx(0.49 * 0.75, rel=1e-15)
    assert f == pytest.approx(4 * s * s, rel=1e-15)
    # pipeline at the time where P = 0.49
    cfg = OneQubitDissipativeConfig(5.0, 1.0, theta=theta)
    t = brentq(lambda t: survival_probability(cfg, t) - p, 0, _first_root_of_p(cfg))
    nf, ns = _speeds(one_qubit_family(cfg), t)
    assert nf == pytest.approx(f, rel=1e-10)
    assert ns == pytest.approx(s, rel=1e-10)


# --- two qubits, independent reservoirs -----------------------------------

def _two_qubit_closed(p):
    return 8 * p / 9, math.sqrt(p * (p + 1)) / 3


def test_two_qubit_hand_values():
    assert _two_qubit_closed(1.0) == pytest.approx((8 / 9, math.sqrt(2) / 3))
    assert _two_qubit_closed(0.0) == (0.0, 0.0)
    f, s = _two_qubit_closed(0.5)
    assert f == pytest.approx(4 / 9)
    assert s == pytest.approx(math.sqrt(0.75) / 3)
    assert f == pytest.approx(4 / 9 * (math.sqrt(1 + 36 * s * s) - 1), rel=1e-14)


def test_two_qubit_pipeline_at_full_decay():
    cfg = TwoQubitIndependentConfig(5.0, 1.0, 0.4)
    root = _first_root_of_p(cfg)
    f, s = _speeds(two_qubit_independent_family(cfg), root)
    assert f < 1e-15 and s < 1e-8


# --- two qubits, common reservoir -----------------------------------------

FIG1 = CommonReservoirConfig(0.3, 8.0)


def test_common_amplitude_start_and_first_zero():
    assert common_reservoir_amplitude(FIG1, 0.0) == 1.0
    w = math.sqrt(4 * FIG1.big_r**2 - 1)
    # e^{-tau/2}[cos(w tau/2) + sin(w tau/2)/w] vanishes where tan(w tau/2) = -w
    root = brentq(lambda x: math.cos(x) + math.sin(x) / w, math.pi / 2, math.pi) * 2 / w
    assert abs(common_reservoir_amplitude(FIG1, root)) <= 1e-14
    f = lambda tau: common_reservoir_amplitude(FIG1, tau)
    assert brentq(f, 0.01, 0.3, xtol=1e-15) == pytest.approx(root, abs=1e-12)


def test_common_amplitude_overdamped_is_monotone():
    cfg = CommonReservoirConfig(0.3, 0.4)
    taus = np.linspace(0, 10, 1001)
    vals = np.array([common_reservoir_amplitude(cfg, x) for x in taus])
    assert np.all(np.diff(vals) < 0)


def test_common_hss_at_start_is_half():
    for r1 in (0.0, 0.3, 0.8, 1.0):
        assert closed_hss(CommonReservoirConfig(r1, 8.0), 0.0, 0.9) == pytest.approx(0.5, rel=1e-14)


def test_common_symmetric_overlaps():
    cfg = CommonReservoirConfig(1 / math.sqrt(2), 8.0, phi=0.0)
    c1, c2 = excitation_amplitudes(cfg, 0.0, 0.0)
    # beta_+ = 1, beta_- = 0 leaves the bright state at full amplitude
    assert c1 == pytest.approx(1 / math.sqrt(2))
    assert c2 == pytest.approx(1 / math.sqrt(2))
    tau = 0.7
    c1, c2 = excitation_amplitudes(cfg, tau, 0.0)
    amp = common_reservoir_amplitude(cfg, tau)
    assert c1 == pytest.approx(amp / math.sqrt(2)) and c2 == pytest.approx(amp / math.sqrt(2))


@pytest.mark.parametrize("phi", [0.3, math.pi / 4, 1.2])
def test_common_channel_reproduces_reduced_state(phi):
    cfg = CommonReservoirConfig(0.3, 8.0, phi)
    fam = common_reservoir_family(cfg)
    for tau in np.linspace(0, 3, 13):
        npt.assert_allclose(fam.state_at(tau), reduced_state(cfg, tau, phi), atol=1e-14)


def test_common_numeric_hss_matches_radical():
    fam = common_reservoir_family(FIG1)
    for tau in np.linspace(0, 3, 61):
        assert _speeds(fam, tau)[1] == pytest.approx(closed_hss(FIG1, tau, FIG1.phi), abs=1e-8)


def test_common_channel_complete():
    for tau in (0.0, 0.2, 1.7):
        assert completeness_error(common_reservoir_channel(FIG1, tau).operators) <= 1e-10


# --- teleportation ----------------------------------------------------------

SPINS = ((1.0, 0.6, 0.4), (0.5, 0.3, 0.2))


def test_decoherence_factor():
    assert decoherence_factor(TeleportationConfig(0.8, 0.3, env_spins=SPINS), 0.0) == 1.0
    decoupled = TeleportationConfig(0.8, 0.3, env_spins=((1.0, 0.5, -0.5),))
    assert all(decoherence_factor(decoupled, t) == 1.0 for t in (0.3, 2.0, 9.0))
    one = TeleportationConfig(0.8, 0.3, env_spins=((1.0, 0.5, 0.5),))
    assert decoherence_factor(one, math.pi / (2 * math.sqrt(2))) == pytest.approx(0, abs=1e-15)


def test_teleport_with_perfect_bell_pair_is_identity():
    rho = projector(np.array([0, 0.6, 0.8j, 0]))
    npt.assert_allclose(teleport(BELL_0, rho), rho, atol=1e-15)


def test_teleport_with_noise_resource_gives_noise():
    rho = projector(np.array([0.5, 0.5, 0.5, 0.5j]))
    npt.assert_allclose(teleport(np.eye(4) / 4, rho), np.eye(4) / 4, atol=1e-15)


def test_bell_weights_sum_to_one():
    cfg = TeleportationConfig(0.8, 0.3, env_spins=SPINS)
    assert bell_weights(resource_state(cfg, 1.3)).sum() == pytest.approx(1, abs=1e-14)


def test_teleport_weight_normalization_guard(monkeypatch):
    import hsspeed.scenarios.teleportation as tp

    monkeypatch.setattr(tp, "bell_weights", lambda res: np.array([0.5, 0.4, 0.0, 0.0]))
    with pytest.raises(WeightsNotNormalizedError):
        teleportation_channel(BELL_0)


def test_teleport_pipeline_matches_closed_output():
    for r in (0.3, 0.7, 1.0):
        for p in (0.1, 0.5, 0.8):
            cfg = TeleportationConfig(r, p, theta=1.0, phi=0.5, omega_sum=0.7, env_spins=SPINS)
            fam = teleportation_family(cfg)
            for t in (0.0, 0.9, 2.4):
                npt.assert_allclose(fam.state_at(t), output_state_closed(cfg, t), atol=1e-10)


def test_time_free_cosine_factor_is_rejected_by_pipeline():
    # reading the squared cosine without its time argument disagrees with the exact protocol
    cfg = TeleportationConfig(1.0, 0.5, theta=1.0, phi=0.5, omega_sum=0.7)
    t = 1.5
    exact = teleportation_family(cfg).state_at(t)
    closed = output_state_closed(cfg, t)
    time_free = closed.copy()
    scale = math.cos(cfg.omega_sum) ** 2 / math.cos(cfg.omega_sum * t) ** 2
    time_free[1, 2] *= scale
    time_free[2, 1] *= scale
    assert np.max(np.abs(exact - closed)) <= 1e-12
    assert np.max(np.abs(exact - time_free)) > 0.1


def test_teleportation_ideal_point():
    cfg = TeleportationConfig(1.0, 0.5, theta=math.pi / 2, phi=0.2, omega_sum=0.0)
    f, s = _speeds(teleportation_family(cfg), 0.8)
    assert f == pytest.approx(1, rel=1e-12)
    assert s == pytest.approx(0.5, rel=1e-12)
    assert 8 * s * s / (1 + cfg.r**2) == pytest.approx(f, rel=1e-12)


@pytest.mark.parametrize("p", [0.0, 1.0])
def test_teleportation_without_resource_coherence(p):
    cfg = TeleportationConfig(0.9, p, theta=1.0, env_spins=SPINS)
    f, s = _speeds(teleportation_family(cfg), 0.5)
    assert f == pytest.approx(0, abs=1e-14) and s == pytest.approx(0, abs=1e-14)


def test_teleportation_generic_closed_forms():
    cfg = TeleportationConfig(0.8, 0.3, theta=1.0, phi=0.5, omega_sum=0.7, env_spins=SPINS)
    fam = teleportation_family(cfg)
    for t in (0.3, 1.1, 2.9):
        f, s = _speeds(fam, t, mode="finite-difference")
        cf, cs = fam.closed(t, 0)
        assert f == pytest.approx(cf, abs=1e-8)
        assert s == pytest.approx(cs, abs=1e-8)


# --- Majorana register -----------------------------------------------------

OHMIC = MajoranaConfig(n=3, m=2, q_exponent=1.0, b_field=1.0, gamma_cap0=1.0)
CUBIC = MajoranaConfig(n=3, m=2, q_exponent=3.0, b_field=1.0, gamma_cap0=1.0)


def test_alpha_at_start():
    assert majorana_alpha(OHMIC, 0.0) == 1.0
    assert majorana_alpha(CUBIC, 0.0) == 1.0


@pytest.mark.parametrize("t", [0.5, 1.0, 2.0])
def test_alpha_ohmic_against_series_oracle(t):
    beta = 4 * math.pi  # |beta| with Q = 1, Gamma0 = 1
    ref = math.exp(-2 * beta * 0.5 * t * t * mp_2f2(-t * t / 4))
    assert majorana_alpha(OHMIC, t) == pytest.approx(ref, rel=1e-12)


def test_alpha_cubic_against_series_oracle():
    t = 1.0
    # Gamma((Q-1)/2) = Gamma(1) = 1
    integral = 2 * (1 - mp_1f1(1.0, 0.5, -t * t / 4))
    assert bath_integral(CUBIC, t) == pytest.approx(integral, rel=1e-12)
    beta = 4 * math.pi / math.gamma(4)
    assert abs(bath_beta(CUBIC)) == pytest.approx(beta, rel=1e-15)
    assert majorana_alpha(CUBIC, t) == pytest.approx(math.exp(-2 * beta * integral), rel=1e-12)


def test_near_ohmic_exponent_warns():
    cfg = MajoranaConfig(n=3, m=1, q_exponent=1.005)
    with pytest.warns(NearBranchPointWarning):
        bath_integral(cfg, 1.0)
    with warnings.catch_warnings():
        warnings.simplefilter("error", NearBranchPointWarning)
        bath_integral(OHMIC, 1.0)


@pytest.mark.parametrize("t", [0.5, 1.5, 4.0])
def test_general_branch_limit_is_twice_ohmic_branch(t):
    cfg = MajoranaConfig(n=3, m=1, q_exponent=1.0 + 1e-7)
    with pytest.warns(NearBranchPointWarning):
        near = bath_integral(cfg, t)
    assert near / bath_integral(OHMIC, t) == pytest.approx(2.0, rel=1e-6)


def _w(**kw):
    cfg = dict(n=3, m=1, state_kind="w", phases=(0.3, 0.9), noisy_qubits=(2,))
    return MajoranaConfig(**{**cfg, **kw})


def test_w_start_values():
    fam = majorana_family(_w())
    f1, s1 = _speeds(fam, 0.0, 0)
    assert f1 == pytest.approx(8 / 9, rel=1e-12)
    assert s1 == pytest.approx(math.sqrt(2) / 3, rel=1e-12)
    assert 10 / 9 - 2 * math.sqrt(2) / (27 * s1) == pytest.approx(8 / 9, rel=1e-12)


def test_w_fully_decohered_values():
    # a strong field drives alpha to 0 at long times
    cfg = _w(q_exponent=1.0, b_field=3.0)
    fam = majorana_family(cfg)
    t = 40.0
    assert majorana_alpha(cfg, t) < 1e-12
    f1, s1 = _speeds(fam, t, 0)
    f2, s2 = _speeds(fam, t, 1)
    assert f1 == pytest.approx(2 / 3, rel=1e-9) and s1 == pytest.approx(1 / (3 * math.sqrt(2)), rel=1e-9)
    assert f2 == pytest.approx(0, abs=1e-12) and s2 == pytest.approx(0, abs=1e-12)


def test_w_closed_forms_dropped_for_other_noise_placements():
    fam = majorana_family(MajoranaConfig(n=3, m=3, state_kind="w", phases=(0.3, 0.9)))
    assert fam.closed(1.0, 0) == (None, None)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_ghz_start_values(m):
    fam = majorana_family(MajoranaConfig(n=3, m=m, state_kind="ghz", phases=(0.5,)))
    f, s = _speeds(fam, 0.0)
    assert f == pytest.approx(1, rel=1e-12) and s == pytest.approx(0.5, rel=1e-12)


def test_ghz_all_noisy_keeps_hss_form_only():
    fam = majorana_family(MajoranaConfig(n=3, m=3, q_exponent=3, b_field=0.3, state_kind="ghz", phases=(0.5,)))
    cf, cs = fam.closed(2.0, 0)
    assert cf is None
    assert _speeds(fam, 2.0)[1] == pytest.approx(cs, rel=1e-12)


def test_majorana_config_validation():
    with pytest.raises(ValueError):
        MajoranaConfig(n=3, m=4)
    with pytest.raises(ValueError):
        MajoranaConfig(n=4, m=1, state_kind="w")
    with pytest.raises(ValueError):
        MajoranaConfig(n=3, m=1, noisy_qubits=(5,))
    with pytest.raises(ValueError):
        MajoranaConfig(n=3, m=1, q_exponent=-1)


# --- every built-in family ------------------------------------------------

@pytest.mark.parametrize("name", sorted(PRESETS))
def test_evolved_states_are_valid(name):
    preset = PRESETS[name]
    fam = preset.build()
    for t in preset.grid.times[::25]:
        check_density(fam.state_at(t))
        ch = fam.channel_at(t)
        assert completeness_error(ch.operators) <= 1e-10


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_derivative_modes_agree(name):
    preset = PRESETS[name]
    fam = preset.build()
    for t in preset.grid.times[::50]:
        a = _speeds(fam, t, preset.phase_index, "linearity")
        b = _speeds(fam, t, preset.phase_index, "finite-difference")
        assert a == pytest.approx(b, abs=1e-5)


@pytest.mark.parametrize("name", [n for n, p in sorted(PRESETS.items()) if p.has_zeros])
def test_small_qfi_implies_small_hss(name):
    preset = PRESETS[name]
    fam = preset.build()
    for t in preset.grid.times:
        f, s = _speeds(fam, t, preset.phase_index)
        if f < 1e-8:
            assert s < 1e-4


def test_w_phi1_speed_never_vanishes():
    preset = PRESETS["majorana-w-phi1"]
    fam = preset.build()
    floor = 1 / (3 * math.sqrt(2))
    assert all(_speeds(fam, t)[1] >= floor - 1e-9 for t in preset.grid.times)
