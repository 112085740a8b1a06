"""Independent reference evaluations used by the tests."""

import mpmath
import numpy as np

DIGITS = 200


def _direct_series(ratio, z):
    # sum_k t_k with t_0 = 1, t_{k+1} = t_k * ratio(k) * z, in 200-digit arithmetic
    with mpmath.workdps(DIGITS):
        z = mpmath.mpf(z)
        term = mpmath.mpf(1)
        total = mpmath.mpf(1)
        k = 0
        while True:
            term *= ratio(k) * z
            total += term
            k += 1
            if k > abs(z) + 10 and abs(term) < mpmath.mpf(10) ** (-DIGITS + 20) * abs(total):
                return float(total)


def mp_1f1(a, b, z):
    a, b = mpmath.mpf(a), mpmath.mpf(b)
    return _direct_series(lambda k: (a + k) / ((b + k) * (k + 1)), z)


def mp_2f2(z):
    """2F2({1,1};{3/2,2};z) by its defining series."""
    return _direct_series(
        lambda k: (1 + k) ** 2 / ((mpmath.mpf(3) / 2 + k) * (2 + k) * (k + 1)), z
    )


def pure_state_qfi(psi, dpsi):
    """4 (<dpsi|dpsi> - |<psi|dpsi>|^2) for a normalized pure-state family."""
    return float(4 * (np.vdot(dpsi, dpsi).real - abs(np.vdot(psi, dpsi)) ** 2))
