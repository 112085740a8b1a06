"""Time sweeps of QFI and HSS, and the reports built from them.

Reports only use interior grid points for anything derivative-based; the
first and last samples carry no time derivative.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .exceptions import InvariantViolation
from .scenarios.base import DEFAULT_PHASE_STEP, EvolvedFamily
from .speeds import hss, qfi

HSS_ZERO_THRESHOLD = 1e-4
QFI_ZERO_THRESHOLD = 1e-8
TIE_TOL = 1e-12
FLOW_THRESHOLD = 1e-9
HIERARCHY_SLACK = 1e-6


@dataclass(frozen=True)
class SweepGrid:
    t_start: float
    t_end: float
    steps: int

    def __post_init__(self):
        if self.steps < 3:
            raise ValueError("a sweep needs at least 3 grid points")
        if not (self.t_end > self.t_start >= 0):
            raise ValueError("need t_end > t_start >= 0")

    @property
    def times(self) -> np.ndarray:
        return np.linspace(self.t_start, self.t_end, self.steps)

    @property
    def step(self) -> float:
        return (self.t_end - self.t_start) / (self.steps - 1)


@dataclass(frozen=True)
class SpeedSample:
    t: float
    hss_num: float
    qfi_num: float
    hss_closed: float | None = None
    qfi_closed: float | None = None
    d_hss_dt: float | None = None
    d_qfi_dt: float | None = None

    def __post_init__(self):
        if self.hss_num < 0 or self.qfi_num < 0:
            raise InvariantViolation(f"negative speed at t={self.t}")
        if self.hss_num > np.sqrt(self.qfi_num) + HIERARCHY_SLACK:
            raise InvariantViolation(
                f"HSS {self.hss_num:.6g} exceeds sqrt(QFI) {np.sqrt(self.qfi_num):.6g} at t={self.t}"
            )


def _central_differences(values: np.ndarray, step: float) -> list:
    out = [None] * len(values)
    for i in range(1, len(values) - 1):
        out[i] = float((values[i + 1] - values[i - 1]) / (2 * step))
    return out


def sweep(
    family: EvolvedFamily,
    phase_index: int = 0,
    grid: SweepGrid = SweepGrid(0.0, 1.0, 101),
    phi0: Sequence[float] | None = None,
    derivative_mode: str = "linearity",
    h: float = DEFAULT_PHASE_STEP,
    n_jobs: int = 1,
) -> list[SpeedSample]:
    """Evaluate numeric and closed-form QFI/HSS along a time grid.

    Args:
        family: the evolved state family.
        phase_index: which encoded phase to differentiate against.
        grid: time grid.
        phi0: phase vector; defaults to the family's own phases.
        derivative_mode: ``"linearity"`` pushes the exact initial derivative
            through the channel, ``"finite-difference"`` differences the
            evolved state at ``phi +/- h``.
        n_jobs: worker threads for the per-time evaluations. Output order
            always follows the grid.
    """
    times = grid.times

    def point(t):
        sd = family.evaluate(float(t), phase_index, phi0, derivative_mode, h)
        q_closed, s_closed = family.closed(float(t), phase_index, phi0)
        return hss(sd), qfi(sd), s_closed, q_closed

    if n_jobs > 1:
        with ThreadPoolExecutor(max_workers=n_jobs) as pool:
            rows = list(pool.map(point, times))
    else:
        rows = [point(t) for t in times]
    hs = np.array([r[0] for r in rows])
    fs = np.array([r[1] for r in rows])
    d_h = _central_differences(hs, grid.step)
    d_f = _central_differences(fs, grid.step)
    return [
        SpeedSample(float(t), float(hs[i]), float(fs[i]), rows[i][2], rows[i][3], d_h[i], d_f[i])
        for i, t in enumerate(times)
    ]


def _values(samples, quantity: str) -> np.ndarray:
    if quantity not in ("qfi", "hss"):
        raise ValueError("quantity must be 'qfi' or 'hss'")
    return np.array([getattr(s, f"{quantity}_num") for s in samples])


@dataclass(frozen=True)
class ZeroEvent:
    """A maximal run of consecutive grid points below threshold."""

    t: float
    start: int
    stop: int
    boundary: bool


def zero_events(samples, value_threshold: float, quantity: str = "qfi") -> list[ZeroEvent]:
    v = _values(samples, quantity)
    below = v < value_threshold
    events = []
    i = 0
    while i < len(v):
        if not below[i]:
            i += 1
            continue
        j = i
        while j + 1 < len(v) and below[j + 1]:
            j += 1
        k = i + int(np.argmin(v[i : j + 1]))
        events.append(ZeroEvent(samples[k].t, i, j, i == 0 or j == len(v) - 1))
        i = j + 1
    return events


def detect_zeros(
    samples, value_threshold: float, quantity: str = "qfi", include_boundary: bool = False
) -> list[float]:
    """Times of zero events, one per run of sub-threshold points (at the run minimum).

    Runs touching either end of the grid are boundary events and are only
    returned when ``include_boundary`` is set.
    """
    if len(samples) < 3:
        raise ValueError("need at least 3 samples")
    return [
        e.t
        for e in zero_events(samples, value_threshold, quantity)
        if include_boundary or not e.boundary
    ]


def _sign(x: float | None) -> int:
    if x is None or abs(x) <= TIE_TOL:
        return 0
    return 1 if x > 0 else -1


def extrema(samples, quantity: str, support_threshold: float = 0.0) -> list[float]:
    """Grid times where the same-grid time derivative changes sign.

    Derivatives within ``TIE_TOL`` of zero, and points whose HSS does not
    exceed ``support_threshold``, are skipped. The extremum is placed at the
    most extreme value between the two bracketing points.
    """
    v = _values(samples, quantity)
    d = [getattr(s, f"d_{quantity}_dt") for s in samples]
    out = []
    prev_i, prev_s = None, 0
    for i in range(1, len(samples) - 1):
        if samples[i].hss_num <= support_threshold:
            continue
        s = _sign(d[i])
        if s == 0:
            continue
        if prev_s and s != prev_s:
            seg = v[prev_i : i + 1]
            k = prev_i + int(np.argmax(seg) if prev_s > 0 else np.argmin(seg))
            out.append(samples[k].t)
        prev_i, prev_s = i, s
    return out


@dataclass(frozen=True)
class CoincidenceReport:
    sign_agreements: int
    sign_disagreements: list = field(default_factory=list)
    zero_mismatches: list = field(default_factory=list)
    extrema_qfi: list = field(default_factory=list)
    extrema_hss: list = field(default_factory=list)
    step: float = 0.0

    def extrema_paired(self, steps: float = 1.0) -> bool:
        """Same number of extrema, pairwise within ``steps`` grid steps."""
        if len(self.extrema_qfi) != len(self.extrema_hss):
            return False
        slack = steps * self.step * (1 + 1e-9)
        return all(abs(a - b) <= slack for a, b in zip(self.extrema_qfi, self.extrema_hss))

    @property
    def ok(self) -> bool:
        return not self.sign_disagreements and not self.zero_mismatches


def _pair_runs(a: list[ZeroEvent], b: list[ZeroEvent]) -> list[ZeroEvent]:
    # runs pair when their index ranges overlap or sit within one grid step
    return [e for e in a if not any(f.start <= e.stop + 1 and e.start <= f.stop + 1 for f in b)]


def coincidence(
    samples,
    zero_threshold: float = HSS_ZERO_THRESHOLD,
    qfi_zero_threshold: float = QFI_ZERO_THRESHOLD,
) -> CoincidenceReport:
    """Compare the monotonicity and zeros of the QFI and HSS curves.

    Derivative signs are compared at interior points with
    ``hss_num > zero_threshold``; a derivative within ``TIE_TOL`` of zero
    counts as agreement.
    """
    if len(samples) < 3:
        raise ValueError("need at least 3 samples")
    agree, disagree = 0, []
    for s in samples[1:-1]:
        if s.hss_num <= zero_threshold:
            continue
        a, b = _sign(s.d_qfi_dt), _sign(s.d_hss_dt)
        if a == 0 or b == 0 or a == b:
            agree += 1
        else:
            disagree.append(s.t)
    zq = zero_events(samples, qfi_zero_threshold, "qfi")
    zh = zero_events(samples, zero_threshold, "hss")
    mismatched = _pair_runs(zq, zh) + _pair_runs(zh, zq)
    step = samples[1].t - samples[0].t
    return CoincidenceReport(
        sign_agreements=agree,
        sign_disagreements=disagree,
        zero_mismatches=sorted(e.t for e in mismatched),
        extrema_qfi=extrema(samples, "qfi", zero_threshold),
        extrema_hss=extrema(samples, "hss", zero_threshold),
        step=step,
    )


@dataclass(frozen=True)
class NonMarkovReport:
    qfi_flow_positive_intervals: list
    hss_flow_positive_intervals: list
    step: float

    def agree(self, steps: float = 1.0) -> bool:
        a, b = self.qfi_flow_positive_intervals, self.hss_flow_positive_intervals
        if len(a) != len(b):
            return False
        slack = steps * self.step * (1 + 1e-9)
        return all(
            abs(x0 - y0) <= slack and abs(x1 - y1) <= slack for (x0, x1), (y0, y1) in zip(a, b)
        )

    @property
    def detected(self) -> bool:
        return bool(self.qfi_flow_positive_intervals or self.hss_flow_positive_intervals)


def positive_intervals(
    samples,
    quantity: str,
    flow_threshold: float = FLOW_THRESHOLD,
    support_threshold: float = HSS_ZERO_THRESHOLD,
) -> list[tuple[float, float]]:
    out = []
    start = last = None
    for s in samples[1:-1]:
        d = getattr(s, f"d_{quantity}_dt")
        if d > flow_threshold and s.hss_num > support_threshold:
            if start is None:
                start = s.t
            last = s.t
        elif start is not None:
            out.append((start, last))
            start = None
    if start is not None:
        out.append((start, last))
    return out


def nonmarkov_intervals(
    samples,
    flow_threshold: float = FLOW_THRESHOLD,
    support_threshold: float = HSS_ZERO_THRESHOLD,
) -> NonMarkovReport:
    """Maximal intervals where the QFI flow and the HSS flow are positive.

    Points where the HSS is at or below ``support_threshold`` carry no phase
    information and never count as backflow; pass 0 to disable the mask.
    """
    if len(samples) < 3:
        raise ValueError("need at least 3 samples")
    return NonMarkovReport(
        positive_intervals(samples, "qfi", flow_threshold, support_threshold),
        positive_intervals(samples, "hss", flow_threshold, support_threshold),
        samples[1].t - samples[0].t,
    )
