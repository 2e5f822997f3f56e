# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled grid kernels: complex Horner evaluation and the incremental
partial-sum order search.  Mirrors `_pykernels` exactly in interface.

The Horner loop is unrolled four points at a time: each point's recurrence
is a serial dependency chain, so running four independent chains hides the
multiply latency that a one-point loop is stuck behind."""

import numpy as np


def horner_eval(coeffs, z):
    cdef const double complex[::1] c = np.ascontiguousarray(coeffs, dtype=np.complex128)
    zz = np.ascontiguousarray(np.asarray(z, dtype=np.complex128).ravel())
    cdef const double complex[::1] zv = zz
    out = np.empty(zz.shape[0], dtype=np.complex128)
    cdef double complex[::1] ov = out
    cdef Py_ssize_t i, k, n = zv.shape[0], m = c.shape[0]
    cdef double complex a0, a1, a2, a3, z0, z1, z2, z3
    if m == 0:
        out[:] = 0
        return out.reshape(np.shape(z))
    i = 0
    while i + 4 <= n:
        z0 = zv[i]; z1 = zv[i + 1]; z2 = zv[i + 2]; z3 = zv[i + 3]
        a0 = a1 = a2 = a3 = c[m - 1]
        for k in range(m - 2, -1, -1):
            a0 = a0 * z0 + c[k]
            a1 = a1 * z1 + c[k]
            a2 = a2 * z2 + c[k]
            a3 = a3 * z3 + c[k]
        ov[i] = a0; ov[i + 1] = a1; ov[i + 2] = a2; ov[i + 3] = a3
        i += 4
    while i < n:
        a0 = c[m - 1]
        for k in range(m - 2, -1, -1):
            a0 = a0 * zv[i] + c[k]
        ov[i] = a0
        i += 1
    return out.reshape(np.shape(z))


def rational_eval(num, den, z):
    with np.errstate(divide="ignore", invalid="ignore"):
        return horner_eval(num, z) / horner_eval(den, z)


def smallest_partial_sum_order(coeffs, target, z, double delta, max_order):
    cdef const double complex[::1] c = np.ascontiguousarray(coeffs, dtype=np.complex128)
    cdef const double complex[::1] zv = np.ascontiguousarray(
        np.asarray(z, dtype=np.complex128).ravel())
    cdef const double complex[::1] tv = np.ascontiguousarray(
        np.asarray(target, dtype=np.complex128).ravel())
    cdef Py_ssize_t n = zv.shape[0]
    acc_arr = np.zeros(n, dtype=np.complex128)
    pow_arr = np.ones(n, dtype=np.complex128)
    cdef double complex[::1] acc = acc_arr
    cdef double complex[::1] zpow = pow_arr
    cdef Py_ssize_t m, i, cap = min(<Py_ssize_t>max_order, c.shape[0] - 1)
    cdef double worst2, d2, delta2 = delta * delta
    cdef double complex diff, cm
    for m in range(cap + 1):
        cm = c[m]
        worst2 = 0.0
        for i in range(n):
            acc[i] = acc[i] + cm * zpow[i]
            diff = tv[i] - acc[i]
            # squared magnitudes: same comparison, no per-point hypot
            d2 = diff.real * diff.real + diff.imag * diff.imag
            if d2 > worst2:
                worst2 = d2
        if worst2 < delta2:
            return m
        for i in range(n):
            zpow[i] = zpow[i] * zv[i]
    return -1
