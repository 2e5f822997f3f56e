"""Truncated formal power series and complex polynomials.

Coefficients are double-precision complex vectors.  A TaylorSeries stores
the Maclaurin coefficients a_0..a_M of some function; a ComplexPoly is an
exact polynomial with trailing zeros trimmed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DenominatorVanishesAtZero, TruncationExceeded
from .kernels import horner_eval, rational_eval


def _as_coeff_array(coeffs):
    arr = np.atleast_1d(np.asarray(coeffs, dtype=np.complex128)).copy()
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class TaylorSeries:
    """Maclaurin coefficients a_0..a_M of a function analytic at 0."""

    coeffs: np.ndarray

    def __post_init__(self):
        arr = _as_coeff_array(self.coeffs)
        if arr.ndim != 1 or len(arr) == 0:
            raise ValueError("a series needs at least the constant coefficient")
        if not np.all(np.isfinite(arr.view(np.float64))):
            raise ValueError("series coefficients must be finite")
        object.__setattr__(self, "coeffs", arr)

    @property
    def truncation_order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, v: int) -> complex:
        """Coefficient a_v, with a_v = 0 for v < 0."""
        if v < 0:
            return 0j
        if v > self.truncation_order:
            raise TruncationExceeded(f"a_{v} beyond truncation order {self.truncation_order}")
        return complex(self.coeffs[v])

    def __call__(self, z):
        """Evaluate the truncating polynomial at z (scalar or array)."""
        return horner_eval(self.coeffs, z)


@dataclass(frozen=True)
class ComplexPoly:
    """Polynomial c_0 + c_1 z + ... with trailing zero coefficients trimmed."""

    coeffs: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.complex128))

    def __post_init__(self):
        arr = np.asarray(self.coeffs, dtype=np.complex128).reshape(-1)
        nz = np.nonzero(arr)[0]
        arr = arr[: nz[-1] + 1].copy() if len(nz) else np.zeros(0, dtype=np.complex128)
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return len(self.coeffs) == 0

    def coeff(self, v: int) -> complex:
        if v < 0 or v >= len(self.coeffs):
            return 0j
        return complex(self.coeffs[v])

    def __call__(self, z):
        return horner_eval(self.coeffs, z)

    def __add__(self, other: "ComplexPoly") -> "ComplexPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        out = np.zeros(n, dtype=np.complex128)
        out[: len(self.coeffs)] += self.coeffs
        out[: len(other.coeffs)] += other.coeffs
        return ComplexPoly(out)

    def __sub__(self, other: "ComplexPoly") -> "ComplexPoly":
        return self + other.scale(-1)

    def scale(self, factor) -> "ComplexPoly":
        return ComplexPoly(self.coeffs * complex(factor))

    def shift(self, k: int) -> "ComplexPoly":
        """Multiply by z^k (k >= 0)."""
        if self.is_zero or k == 0:
            return self if k == 0 else ComplexPoly(self.coeffs)
        return ComplexPoly(np.concatenate([np.zeros(k, dtype=np.complex128), self.coeffs]))

    def mul(self, other: "ComplexPoly") -> "ComplexPoly":
        if self.is_zero or other.is_zero:
            return ComplexPoly()
        return ComplexPoly(np.convolve(self.coeffs, other.coeffs))

    def to_series(self, M: int) -> TaylorSeries:
        out = np.zeros(M + 1, dtype=np.complex128)
        k = min(M + 1, len(self.coeffs))
        out[:k] = self.coeffs[:k]
        return TaylorSeries(out)


@dataclass(frozen=True)
class RationalPair:
    """A rational function num/den with den(0) != 0."""

    num: ComplexPoly
    den: ComplexPoly

    def __post_init__(self):
        if self.den.is_zero:
            raise ValueError("denominator is identically zero")

    def __call__(self, z):
        return rational_eval(self.num.coeffs, self.den.coeffs, z)

    def to_series(self, M: int) -> TaylorSeries:
        return series_from_rational(self.num, self.den, M)


def series_from_rational(num: ComplexPoly, den: ComplexPoly, M: int) -> TaylorSeries:
    """Expand num/den around 0 through order M by the long-division recurrence.

    a_v = (n_v - sum_{j=1..v} d_j a_{v-j}) / d_0, exact in the sense of the
    recurrence.  Raises DenominatorVanishesAtZero when den(0) = 0.
    """
    if M < 0:
        raise ValueError("truncation order must be nonnegative")
    d0 = den.coeff(0)
    if d0 == 0:
        raise DenominatorVanishesAtZero("denominator vanishes at the expansion point")
    a = np.zeros(M + 1, dtype=np.complex128)
    for v in range(M + 1):
        acc = num.coeff(v)
        for j in range(1, min(v, den.degree) + 1):
            acc -= den.coeff(j) * a[v - j]
        a[v] = acc / d0
    return TaylorSeries(a)


def partial_sum(s: TaylorSeries, k: int) -> ComplexPoly:
    """S_k: the partial sum through order k; the zero polynomial for k < 0."""
    if k < 0:
        return ComplexPoly()
    if k > s.truncation_order:
        raise TruncationExceeded(f"S_{k} exceeds truncation order {s.truncation_order}")
    return ComplexPoly(s.coeffs[: k + 1])


def series_multiply(a: TaylorSeries, b: TaylorSeries, M: int) -> TaylorSeries:
    """Cauchy product through order M."""
    if M > min(a.truncation_order, b.truncation_order):
        raise TruncationExceeded(
            f"product order {M} exceeds a common truncation "
            f"({a.truncation_order}, {b.truncation_order})"
        )
    full = np.convolve(a.coeffs[: M + 1], b.coeffs[: M + 1])
    return TaylorSeries(full[: M + 1])


def default_truncation(p: int, q: int) -> int:
    """Truncation used wherever a (p,q) Pade computation is downstream."""
    return p + q + 20
