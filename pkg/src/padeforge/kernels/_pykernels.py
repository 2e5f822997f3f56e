"""Pure-numpy implementations of the hot grid kernels.

These are the fallback used when the compiled extension is unavailable;
see `padeforge.kernels` for the backend selection logic.  Both backends
must agree to floating-point identity on identical inputs is NOT required
(summation order differs), but they must agree within normal roundoff.
"""

import numpy as np


def horner_eval(coeffs, z):
    """Evaluate a polynomial with coefficient vector c_0..c_deg at points z.

    Both arguments are complex128 arrays; returns an array of the same
    shape as z.  The zero polynomial (empty coeffs) evaluates to 0.
    """
    z = np.asarray(z, dtype=np.complex128)
    if len(coeffs) == 0:
        return np.zeros_like(z)
    acc = np.full_like(z, coeffs[-1])
    for k in range(len(coeffs) - 2, -1, -1):
        acc *= z
        acc += coeffs[k]
    return acc


def rational_eval(num, den, z):
    """Evaluate num(z)/den(z) pointwise.  Division by zero yields inf/nan."""
    z = np.asarray(z, dtype=np.complex128)
    with np.errstate(divide="ignore", invalid="ignore"):
        return horner_eval(num, z) / horner_eval(den, z)


def smallest_partial_sum_order(coeffs, target, z, delta, max_order):
    """Smallest M with max_z |target(z) - S_M(z)| < delta, or -1.

    S_M is the partial sum of the coefficient vector through order M; the
    running sum is updated incrementally (one multiply-add per order) so
    the search is O(len(z) * M).
    """
    z = np.asarray(z, dtype=np.complex128)
    target = np.asarray(target, dtype=np.complex128)
    acc = np.zeros_like(z)
    zpow = np.ones_like(z)
    cap = min(max_order, len(coeffs) - 1)
    for m in range(cap + 1):
        acc += coeffs[m] * zpow
        if np.max(np.abs(target - acc)) < delta:
            return m
        zpow *= z
    return -1
