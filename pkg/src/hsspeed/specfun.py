"""Gamma and the two hypergeometric functions used by the Majorana noise model.

Only real arguments are supported. ``hyp1f1`` switches to the Kummer
transformation for ``z < -1``; ``hyp2f2_11_3half_2`` uses a positive-term
rearrangement on the same range so neither evaluator sums an alternating
series with large intermediate terms.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .exceptions import PoleError, PrecisionLossWarning, SeriesDivergenceError

KUMMER_THRESHOLD = -1.0


@dataclass(frozen=True)
class SeriesControl:
    rel_tol: float = 1e-12
    max_terms: int = 10000

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be >= 1")


DEFAULT_CONTROL = SeriesControl()


def _is_nonpositive_integer(x: float) -> bool:
    return x <= 0 and float(x).is_integer()


def gamma_fn(z: float) -> float:
    if _is_nonpositive_integer(z):
        raise PoleError(f"Gamma has a pole at {z}")
    return math.gamma(z)


def _flag(largest: float, value: float, ctl: SeriesControl, what: str) -> None:
    if largest > abs(value) / ctl.rel_tol:
        warnings.warn(
            f"{what}: largest term {largest:.3g} vs result {value:.3g}",
            PrecisionLossWarning,
            stacklevel=3,
        )


def _series_1f1(a: float, b: float, z: float, ctl: SeriesControl) -> float:
    term = 1.0
    terms = [term]
    largest = 1.0
    for k in range(ctl.max_terms):
        term *= (a + k) / (b + k) * z / (k + 1)
        terms.append(term)
        largest = max(largest, abs(term))
        if term == 0.0:
            break
        # the ratio test guarantees monotone tail decay once k > |z|
        if k > abs(z) and abs(term) <= ctl.rel_tol * 1e-3 * abs(math.fsum(terms)):
            break
    else:
        raise SeriesDivergenceError(
            f"1F1({a}; {b}; {z}) not converged in {ctl.max_terms} terms"
        )
    value = math.fsum(terms)
    _flag(largest, value, ctl, "hyp1f1")
    return value


def hyp1f1(a: float, b: float, z: float, ctl: SeriesControl = DEFAULT_CONTROL) -> float:
    """Confluent hypergeometric function 1F1(a; b; z) for real arguments."""
    if _is_nonpositive_integer(b):
        raise PoleError(f"1F1 undefined for b = {b}")
    if z == 0.0:
        return 1.0
    if z < KUMMER_THRESHOLD:
        return math.exp(z) * _series_1f1(b - a, b, -z, ctl)
    return _series_1f1(a, b, z, ctl)


def _direct_2f2(z: float, ctl: SeriesControl) -> float:
    # term_k = z^k / ((3/2)_k (k+1))
    terms = [1.0]
    power = 1.0
    largest = 1.0
    for k in range(ctl.max_terms):
        power *= z / (1.5 + k)
        term = power / (k + 2)
        terms.append(term)
        largest = max(largest, abs(term))
        if k > abs(z) and abs(term) <= ctl.rel_tol * 1e-3 * abs(math.fsum(terms)):
            break
    else:
        raise SeriesDivergenceError(f"2F2 at {z} not converged in {ctl.max_terms} terms")
    value = math.fsum(terms)
    _flag(largest, value, ctl, "hyp2f2")
    return value


def _poisson_tail_2f2(x: float, ctl: SeriesControl) -> float:
    """2F2({1,1};{3/2,2};-x) for x > 0 as a sum of positive terms.

    Uses ``z * 2F2(z) = integral_0^z 1F1(1; 3/2; s) ds`` together with the
    Kummer transform of the integrand, which integrates termwise to
    ``2F2(-x) = (1/x) * sum_k P(k+1, x) / (2k+1)`` where ``P`` is the
    regularized lower incomplete gamma function, i.e. a Poisson(x) tail
    probability ``Pr[N >= k+1]``.
    """
    # Poisson pmf p_j = exp(-x) x^j / j!, evaluated in log space to avoid overflow
    upper = int(x + 40.0 * math.sqrt(x) + 60.0)
    if upper > ctl.max_terms:
        raise SeriesDivergenceError(
            f"2F2 at {-x} needs {upper} terms, max_terms={ctl.max_terms}"
        )
    log_x = math.log(x)
    pmf = [math.exp(j * log_x - x - math.lgamma(j + 1)) for j in range(upper + 1)]
    # tails[k] = Pr[N >= k+1], accumulated from the far end for accuracy
    tails = [0.0] * (upper + 1)
    acc = 0.0
    for j in range(upper, 0, -1):
        acc += pmf[j]
        tails[j - 1] = acc
    terms = [tails[k] / (2 * k + 1) for k in range(upper)]
    value = math.fsum(terms) / x
    _flag(max(terms) / x, value, ctl, "hyp2f2")
    return value


def hyp2f2_11_3half_2(z: float, ctl: SeriesControl = DEFAULT_CONTROL) -> float:
    """Generalized hypergeometric 2F2({1, 1}; {3/2, 2}; z) for real ``z``."""
    if z == 0.0:
        return 1.0
    if z < KUMMER_THRESHOLD:
        return _poisson_tail_2f2(-z, ctl)
    return _direct_2f2(z, ctl)
