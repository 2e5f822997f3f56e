"""Pade core: Hankel membership test, the explicit determinant formula,
the order-condition linear solve, and the determinant-in-d machinery used
by the density constructors."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DirectionViolation,
    InsufficientTruncation,
    InterpolationInconsistent,
    NoAdmissibleD,
    NotInDpq,
    SingularSystem,
)
from .series import ComplexPoly, RationalPair, TaylorSeries, partial_sum, series_from_rational

# Membership threshold on the row-norm-relative condition estimate.  An
# exact-zero determinant test is not robust in floating point; this scale
# separates structural cancellations from roundoff.
MEMBERSHIP_THRESHOLD = 1e-12


@dataclass(frozen=True)
class PadeIndex:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 0 or self.q < 0:
            raise ValueError("Pade index components must be nonnegative")


@dataclass(frozen=True)
class MembershipReport:
    determinant_value: complex
    condition_estimate: float
    in_Dpq: bool


@dataclass(frozen=True)
class PadeApproximant:
    numerator: ComplexPoly
    denominator: ComplexPoly
    index: PadeIndex

    def __post_init__(self):
        if self.denominator.coeff(0) != 1:
            raise ValueError("denominator constant term must be exactly 1")
        if self.numerator.degree > self.index.p or self.denominator.degree > self.index.q:
            raise ValueError("degree bounds violated")

    def __call__(self, z):
        return RationalPair(self.numerator, self.denominator)(z)

    def as_rational(self) -> RationalPair:
        return RationalPair(self.numerator, self.denominator)


def hankel_matrix(s: TaylorSeries, idx: PadeIndex) -> np.ndarray:
    """The q x q matrix with entry (i,j) = a_{p-q+1+i+j}, a_{<0} = 0."""
    p, q = idx.p, idx.q
    m = np.zeros((q, q), dtype=np.complex128)
    for i in range(q):
        for j in range(q):
            v = p - q + 1 + i + j
            if 0 <= v <= s.truncation_order:
                m[i, j] = s.coeffs[v]
    return m


def _pivoted_det(m: np.ndarray):
    """Determinant by elimination with partial pivoting, plus a conditioning
    estimate: the smallest pivot relative to the scale of its remaining
    submatrix.  Structural zeros (exact cancellations) drive the estimate to
    roundoff level or exact 0; graded matrices whose entries shrink together
    (factorial Hankel blocks) keep an O(1) estimate."""
    a = m.astype(np.complex128).copy()
    n = len(a)
    det = 1.0 + 0j
    estimate = np.inf
    for k in range(n):
        sub_scale = float(np.max(np.abs(a[k:, k:])))
        if sub_scale == 0.0:
            return 0j, 0.0
        piv_row = k + int(np.argmax(np.abs(a[k:, k])))
        if piv_row != k:
            a[[k, piv_row]] = a[[piv_row, k]]
            det = -det
        piv = a[k, k]
        estimate = min(estimate, abs(piv) / sub_scale)
        if piv == 0:
            return 0j, 0.0
        det *= piv
        a[k + 1 :, k:] -= np.outer(a[k + 1 :, k] / piv, a[k, k:])
    return complex(det), float(estimate)


def hankel_determinant(s: TaylorSeries, idx: PadeIndex) -> MembershipReport:
    """Membership test for the (p,q) entry of the Pade table.

    condition_estimate is the relative-pivot measure of `_pivoted_det`:
    rows of zeros or exact cancellations give 0, roundoff-level
    cancellations fall below the threshold, and uniformly graded matrices
    pass even when the raw determinant underflows toward 0.
    """
    p, q = idx.p, idx.q
    if s.truncation_order < p + q:
        raise InsufficientTruncation(
            f"need truncation >= {p + q}, have {s.truncation_order}"
        )
    if q == 0:
        return MembershipReport(1 + 0j, 1.0, True)
    m = hankel_matrix(s, idx)
    det, estimate = _pivoted_det(m)
    return MembershipReport(det, estimate, estimate > MEMBERSHIP_THRESHOLD)


def _pade_linear_solve(s: TaylorSeries, idx: PadeIndex) -> PadeApproximant:
    p, q = idx.p, idx.q
    a = lambda v: s[v] if v <= s.truncation_order else 0j  # noqa: E731

    # System: sum_{j=1..q} a_{p+i-j} d_j = -a_{p+i}, i = 1..q (d_0 = 1).
    mat = np.zeros((q, q), dtype=np.complex128)
    rhs = np.zeros(q, dtype=np.complex128)
    for i in range(1, q + 1):
        for j in range(1, q + 1):
            v = p + i - j
            mat[i - 1, j - 1] = a(v) if v >= 0 else 0j
        rhs[i - 1] = -a(p + i)
    try:
        d_tail = np.linalg.solve(mat, rhs)
    except np.linalg.LinAlgError as exc:
        raise SingularSystem(f"order-condition solve failed: {exc}") from exc
    resid = np.max(np.abs(mat @ d_tail - rhs))
    scale = max(np.max(np.abs(rhs)), np.max(np.abs(mat)), 1.0)
    if not np.isfinite(resid) or resid > 1e-6 * scale:
        raise SingularSystem("order-condition solve residual too large")

    d = np.concatenate([[1.0 + 0j], d_tail])
    n = np.zeros(p + 1, dtype=np.complex128)
    for v in range(p + 1):
        n[v] = sum(d[j] * a(v - j) for j in range(min(v, q) + 1))
    return PadeApproximant(ComplexPoly(n), ComplexPoly(d), idx)


def _pade_jacobi(s: TaylorSeries, idx: PadeIndex) -> PadeApproximant:
    p, q = idx.p, idx.q
    # Numeric block: rows i=1..q of the (q+1)x(q+1) determinant, entry
    # (i,j) = a_{p-q+i+j}, 0-based j = 0..q, with a_{<0} = 0.
    block = np.zeros((q, q + 1), dtype=np.complex128)
    for i in range(1, q + 1):
        for j in range(q + 1):
            v = p - q + i + j
            if 0 <= v <= s.truncation_order:
                block[i - 1, j] = s.coeffs[v]

    num = ComplexPoly()
    den = ComplexPoly()
    for j in range(q + 1):
        minor = np.delete(block, j, axis=1)
        cofactor = (-1) ** j * complex(np.linalg.det(minor)) if q > 0 else 1 + 0j
        if cofactor == 0:
            continue
        sk = partial_sum(s, p - q + j)
        num = num + sk.shift(q - j).scale(cofactor)
        den = den + ComplexPoly([1.0]).shift(q - j).scale(cofactor)

    d0 = den.coeff(0)
    if d0 == 0:
        raise NotInDpq("Jacobi denominator has zero constant term")
    den_coeffs = np.array(den.coeffs) / d0
    den_coeffs[0] = 1.0  # exact normalization (complex division leaves roundoff)
    return PadeApproximant(ComplexPoly(np.array(num.coeffs) / d0), ComplexPoly(den_coeffs), idx)


def compute_pade(s: TaylorSeries, idx: PadeIndex, method: str = "linear_solve") -> PadeApproximant:
    """The unique [p/q] approximant of s, assuming Hankel membership.

    `linear_solve` (default) solves the q order conditions with partial
    pivoting; `jacobi` expands the explicit determinant formula along its
    polynomial first row.  The two agree whenever membership is clear.
    """
    p, q = idx.p, idx.q
    report = hankel_determinant(s, idx)
    if not report.in_Dpq:
        raise NotInDpq(f"({p},{q}) membership failed, estimate {report.condition_estimate:g}")
    if q == 0:
        return PadeApproximant(partial_sum(s, p), ComplexPoly([1.0]), idx)
    if method == "linear_solve":
        return _pade_linear_solve(s, idx)
    if method == "jacobi":
        return _pade_jacobi(s, idx)
    raise ValueError(f"unknown method {method!r}")


def order_condition_residual(s: TaylorSeries, r: PadeApproximant) -> float:
    """max_{v<=p+q} |b_v - a_v| / (1 + |a_v|) with b the expansion of r."""
    p, q = r.index.p, r.index.q
    if s.truncation_order < p + q:
        raise InsufficientTruncation(f"need truncation >= {p + q}")
    b = series_from_rational(r.numerator, r.denominator, p + q)
    a = s.coeffs[: p + q + 1]
    return float(np.max(np.abs(b.coeffs - a) / (1.0 + np.abs(a))))


def determinant_poly_in_d(t: TaylorSeries, c_dir: TaylorSeries, idx: PadeIndex) -> ComplexPoly:
    """The Hankel determinant of a_v(d) = t_v + c_dir_v * d as a polynomial in d.

    Requires the direction to have support starting exactly at order p,
    which makes the determinant a polynomial of degree at most q.  Computed
    by sampling q+1 values of d on the unit circle and interpolating; a
    held-out (q+2)-th sample cross-checks the fit.
    """
    p, q = idx.p, idx.q
    if q < 1:
        raise ValueError("determinant polynomial needs q >= 1")
    order = min(t.truncation_order, c_dir.truncation_order)
    if order < p + q:
        raise InsufficientTruncation(f"need truncation >= {p + q}")
    direction = c_dir.coeffs[: order + 1]
    scale = np.max(np.abs(direction))
    if p > 0 and np.max(np.abs(direction[:p]), initial=0.0) > 1e-14 * max(scale, 1.0):
        raise DirectionViolation("direction has support below order p")
    if p > len(direction) - 1 or direction[p] == 0:
        raise DirectionViolation("direction coefficient at order p vanishes")

    samples = np.exp(2j * np.pi * np.arange(q + 2) / (q + 2))

    def det_at(d):
        a = TaylorSeries(t.coeffs[: order + 1] + d * direction)
        return hankel_determinant(a, idx).determinant_value

    values = np.array([det_at(d) for d in samples], dtype=np.complex128)
    vand = np.vander(samples[: q + 1], q + 1, increasing=True)
    coeffs = np.linalg.solve(vand, values[: q + 1])

    held_out = samples[q + 1]
    predicted = np.polyval(coeffs[::-1], held_out)
    ref = max(np.max(np.abs(values)), 1e-300)
    if abs(predicted - values[q + 1]) > 1e-8 * ref:
        raise InterpolationInconsistent(
            f"held-out residual {abs(predicted - values[q + 1]):g} vs scale {ref:g}"
        )
    return ComplexPoly(coeffs)


def select_d(bad: ComplexPoly, delta_tilde: float) -> complex:
    """A nonzero d with |d| < delta_tilde avoiding the roots of `bad`.

    Maximizes |bad(d)| over 16 candidates on the ring |d| = delta_tilde/2;
    the determinant polynomial has at most q roots, so the ring argument
    always leaves admissible candidates unless the direction is degenerate.
    """
    if delta_tilde <= 0:
        raise ValueError("delta_tilde must be positive")
    r = 0.5 * delta_tilde
    candidates = r * np.exp(2j * np.pi * np.arange(16) / 16)
    values = np.abs(bad(candidates))
    best = int(np.argmax(values))
    # noise floor: roundoff of evaluating bad on the ring, not the raw
    # coefficient scale (the top coefficient can dwarf |bad_j| r^j).
    if bad.is_zero:
        scale = 0.0
    else:
        mags = np.abs(np.asarray(bad.coeffs))
        scale = float(np.sum(mags * r ** np.arange(len(mags))))
    if values[best] <= 1e-14 * scale or values[best] == 0.0:
        raise NoAdmissibleD("all ring candidates make the determinant vanish")
    return complex(candidates[best])
