"""Constructive density certificates.

Given a target (a polynomial, or a rational function with poles off the
region) and a Pade index dominating its degrees, build an explicit
function that is a fixed point of its own [p/q] approximant, lies within
1/s of that approximant on K_n, and within eps of the target on K_N.  The
construction follows the two proof routes: a perturbed polynomial over a
binomial denominator (simply connected regions), and a perturbed rational
over the shifted original denominator (general regions).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import (
    CertificateFailed,
    EmptyCompact,
    IndexTooSmall,
    NoAdmissibleD,
    NoDeltaFound,
    NonFiniteValue,
    NotInDpq,
    PoleInRegion,
    SingularSystem,
    SurrogateDivergence,
)
from .geometry import (
    CompactGrid,
    Region,
    denominator_roots,
    exhaustion_K,
    pole_free_on,
    sup_norm,
)
from .kernels import smallest_partial_sum_order
from .pade import (
    PadeApproximant,
    PadeIndex,
    compute_pade,
    determinant_poly_in_d,
    hankel_determinant,
    select_d,
)
from .series import ComplexPoly, RationalPair, TaylorSeries, default_truncation, series_from_rational

SURROGATE_ORDER_CAP = 500
DELTA_FLOOR = 1e-12
POLE_AUDIT_EXTRA = 3  # audit horizon is lambda + 3


@dataclass(frozen=True)
class DensityCertificate:
    """Full witness of one density construction run."""

    kind: str  # "simply_connected" | "general"
    target: object  # ComplexPoly or RationalPair
    index: PadeIndex
    region: Region
    c: complex
    d: complex
    delta_tilde: float
    delta: float
    lam: int
    r_radius: float
    n: int
    s: int
    N: int
    epsilon: float
    f_tilde: RationalPair
    f_final: object  # ComplexPoly or RationalPair
    achieved: dict
    pole_audit: dict | None = None

    def __post_init__(self):
        if not (0 < abs(self.d) < self.delta_tilde):
            raise ValueError("need 0 < |d| < delta_tilde")
        if self.lam <= max(self.n, self.N):
            raise ValueError("need lambda > max(n, N)")
        if not (0 < self.delta < min(1.0 / (2 * self.s), self.epsilon / 2)):
            raise ValueError("need 0 < delta < min(1/2s, eps/2)")


@dataclass(frozen=True)
class VerificationReport:
    clauses: tuple
    passed: bool

    def to_json_obj(self):
        return [dict(c) for c in self.clauses]


def _monomial(p: int) -> ComplexPoly:
    return ComplexPoly([0.0] * p + [1.0])


def _identity(z):
    return z


def choose_lambda(region: Region, n: int, N: int):
    """Smallest lambda > max(n,N) whose compact contains the closed disk
    of radius r = 1/(2 max(n,N) + 2) in its interior; returns (lambda, r)."""
    base = max(n, N)
    r = 1.0 / (2 * base + 2)
    circle = r * np.exp(2j * np.pi * np.arange(128) / 128)
    probes = np.concatenate([[0j], circle])
    for lam in range(base + 1, base + 64):
        if r < lam and np.all(region.dist_to_complement(probes) > 1.0 / lam):
            return lam, r
    raise CertificateFailed("lambda_selection", "no admissible lambda within horizon")


def polynomial_surrogate(
    f_tilde: RationalPair, lam: int, delta: float, region: Region
) -> ComplexPoly:
    """Taylor partial sum of f_tilde within delta of it on the K_lambda grid.

    Valid when all poles lie strictly outside the disk spanned by K_lambda,
    which the c-bound of the simply connected construction guarantees.  The
    order is the smallest one meeting delta; capped at SURROGATE_ORDER_CAP.
    """
    if delta <= 0:
        raise ValueError("delta must be positive")
    K = exhaustion_K(region, lam)
    coeffs = f_tilde.to_series(SURROGATE_ORDER_CAP).coeffs
    target = f_tilde(K.points)
    if not np.all(np.isfinite(target.real) & np.isfinite(target.imag)):
        raise NonFiniteValue(complex(K.points[~np.isfinite(target)][0]))
    M = smallest_partial_sum_order(coeffs, target, K.points, delta, SURROGATE_ORDER_CAP)
    if M < 0:
        raise SurrogateDivergence(
            f"no partial sum within {delta:g} through order {SURROGATE_ORDER_CAP}"
        )
    return ComplexPoly(coeffs[: M + 1])


def _fixed_point_check(f_tilde: RationalPair, idx: PadeIndex, M: int) -> PadeApproximant:
    """Confirm [p/q] of f_tilde reproduces f_tilde (normalized); return it."""
    s = f_tilde.to_series(M)
    approx = compute_pade(s, idx)
    b0 = f_tilde.den.coeff(0)
    num_ref = f_tilde.num.scale(1 / b0)
    den_ref = f_tilde.den.scale(1 / b0)
    for got, ref in ((approx.numerator, num_ref), (approx.denominator, den_ref)):
        scale = max(np.max(np.abs(ref.coeffs), initial=0.0), 1e-30)
        a = np.zeros(max(len(got.coeffs), len(ref.coeffs)), dtype=np.complex128)
        b = a.copy()
        a[: len(got.coeffs)] = got.coeffs
        b[: len(ref.coeffs)] = ref.coeffs
        if np.max(np.abs(a - b), initial=0.0) > 1e-8 * scale:
            raise CertificateFailed("fixed_point", "[p/q] of f_tilde differs from f_tilde")
    return approx


def _diff_sup(f, g, K: CompactGrid) -> float:
    return sup_norm(lambda z: np.asarray(f(z)) - np.asarray(g(z)), K)


def build_simply_connected_certificate(
    P: ComplexPoly,
    idx: PadeIndex,
    eps: float,
    region: Region,
    n: int,
    s: int,
    N: int,
    c: complex,
    d: complex,
    delta_tilde: float,
) -> DensityCertificate:
    """Deterministic core of the simply connected construction for given
    (c, d, delta_tilde).  `construct_simply_connected` wraps this with the
    parameter selection; the split keeps the monotonicity of the bounds in
    |c|, |d| directly testable."""
    p, q = idx.p, idx.q
    lam, r_radius = choose_lambda(region, n, N)
    K_lam = exhaustion_K(region, lam)
    K_n = exhaustion_K(region, n)
    K_N = exhaustion_K(region, N)
    M = default_truncation(p, q)

    if q == 0:
        f = P + _monomial(p).scale(d)
        f_tilde = RationalPair(f, ComplexPoly([1.0]))
        approx = _fixed_point_check(f_tilde, idx, M)
        achieved = {
            "sup_ftilde_minus_target": _diff_sup(f_tilde, P, K_lam),
            "sup_pade_error_Kn": _diff_sup(approx, f, K_n),
            "sup_f_minus_target_KN": _diff_sup(f, P, K_N),
            "inf_denominator": 1.0,
        }
        return DensityCertificate(
            "simply_connected", P, idx, region, 0j, d, delta_tilde,
            0.5 * min(1.0 / (2 * s), eps / 2), lam, r_radius, n, s, N, eps,
            f_tilde, f, achieved,
        )

    den = ComplexPoly([1.0]) - _monomial(q).scale(c**q)
    inf_den = float(np.min(np.abs(den(K_lam.points))))
    if inf_den <= 0.5:
        raise CertificateFailed("denominator_bound", f"inf|1-(cz)^q| = {inf_den:g} <= 1/2")

    f_tilde = RationalPair(P + _monomial(p).scale(d), den)
    approx_tilde = _fixed_point_check(f_tilde, idx, M)

    sup_ft_target = _diff_sup(f_tilde, P, K_lam)
    if sup_ft_target >= eps / 2:
        raise CertificateFailed("target_bound", f"|f_tilde - P| = {sup_ft_target:g} >= eps/2")

    # the stability delta is not known a priori, so halve
    # until the surrogate's approximant stays within 1/2s of f_tilde's.
    delta = 0.5 * min(1.0 / (2 * s), eps / 2)
    while True:
        f_final = polynomial_surrogate(f_tilde, lam, delta, region)
        s_final = f_final.to_series(M)
        try:
            approx_final = compute_pade(s_final, idx)
            term1 = _diff_sup(approx_final, approx_tilde, K_lam)
            if term1 < 1.0 / (2 * s):
                break
        except (NotInDpq, SingularSystem, NonFiniteValue):
            pass
        delta /= 2
        if delta < DELTA_FLOOR:
            raise CertificateFailed("stability", "no delta kept the surrogate in D_pq")

    achieved = {
        "sup_ftilde_minus_target": sup_ft_target,
        "sup_pade_error_Kn": _diff_sup(approx_final, f_final, K_n),
        "sup_f_minus_target_KN": _diff_sup(f_final, P, K_N),
        "inf_denominator": inf_den,
    }
    return DensityCertificate(
        "simply_connected", P, idx, region, c, d, delta_tilde, delta,
        lam, r_radius, n, s, N, eps, f_tilde, f_final, achieved,
    )


def construct_simply_connected(
    P: ComplexPoly,
    idx: PadeIndex,
    eps: float,
    region: Region,
    n: int,
    s: int,
    N: int,
) -> DensityCertificate:
    """Build a certificate that some f is its own [p/q] approximant up to
    1/s on K_n and within eps of the polynomial P on K_N.

    Requires p > deg P and a simply connected region kind.  Parameters sit
    at half their admissible bounds; a few retries shrink |c| further when
    the determinant direction is degenerate.
    """
    p, q = idx.p, idx.q
    if p <= P.degree:
        raise IndexTooSmall(f"need p > deg P = {P.degree}")
    if region.kind == "plane_minus_disks":
        raise ValueError("simply connected construction needs a simply connected region")
    if eps <= 0:
        raise ValueError("eps must be positive")

    lam, _ = choose_lambda(region, n, N)
    K_lam = exhaustion_K(region, lam)
    K_N = exhaustion_K(region, N)
    z_sup_N = sup_norm(_identity, K_N)
    z_sup = sup_norm(_identity, K_lam)
    M = default_truncation(p, q)

    if q == 0:
        bound_d = eps / max(z_sup_N**p, 1e-30)
        d = 0.5 * bound_d
        return build_simply_connected_certificate(
            P, idx, eps, region, n, s, N, 0j, d, bound_d
        )

    p_sup = sup_norm(P, K_lam) if not P.is_zero else 0.0
    c = 0.5 * (1.0 / (2.0 * z_sup**q)) ** (1.0 / q)
    last_err = None
    for _ in range(24):
        t1 = 2.0 * (abs(c) ** q * z_sup**q * p_sup)
        if t1 >= eps / 4:
            c /= 2
            continue
        delta_tilde = (eps / 2 - t1) / (2.0 * z_sup**p)
        den = ComplexPoly([1.0]) - _monomial(q).scale(c**q)
        try:
            t = series_from_rational(P, den, M) if not P.is_zero else TaylorSeries(
                np.zeros(M + 1)
            )
            c_dir = series_from_rational(_monomial(p), den, M)
            bad = determinant_poly_in_d(t, c_dir, idx)
            d = select_d(bad, delta_tilde)
            return build_simply_connected_certificate(
                P, idx, eps, region, n, s, N, complex(c), d, delta_tilde
            )
        except (NoAdmissibleD, CertificateFailed) as exc:
            last_err = exc
            c /= 2
    raise CertificateFailed("retries_exhausted", f"last failure: {last_err}")


def _pole_audit(den: ComplexPoly, region: Region, lam: int, horizon_extra: int) -> dict:
    """Check every denominator root keeps a margin from each K_lambda' grid."""
    roots = denominator_roots(den.coeffs)
    audit = {
        "horizon": lam + horizon_extra,
        "roots": [complex(w) for w in roots],
        "min_distance": float("inf"),
        "pass": True,
    }
    rat = RationalPair(ComplexPoly([1.0]), den)
    for lam2 in range(1, lam + horizon_extra + 1):
        try:
            K = exhaustion_K(region, lam2)
        except EmptyCompact:
            continue
        report = pole_free_on(rat, K)
        audit["min_distance"] = min(audit["min_distance"], report.min_distance)
        if not report.pole_free:
            audit["pass"] = False
            return audit
    return audit


def build_general_certificate(
    A: ComplexPoly,
    B: ComplexPoly,
    idx: PadeIndex,
    eps: float,
    region: Region,
    n: int,
    s: int,
    N: int,
    c: complex,
    d: complex,
    delta_tilde: float,
) -> DensityCertificate:
    """Deterministic core of the general-connectivity construction."""
    p, q = idx.p, idx.q
    if c == 0:
        raise ValueError("c must be nonzero: the shifted denominator needs a genuine (cz)^q term")
    lam, r_radius = choose_lambda(region, n, N)
    K_lam = exhaustion_K(region, lam)
    K_n = exhaustion_K(region, n)
    K_N = exhaustion_K(region, N)
    M = default_truncation(p, q)

    den = B - _monomial(q).scale(c**q)
    inf_den = float(np.min(np.abs(den(K_lam.points))))
    if inf_den <= 0:
        raise PoleInRegion("shifted denominator vanishes on the K_lambda grid")

    audit = _pole_audit(den, region, lam, POLE_AUDIT_EXTRA)
    if not audit["pass"]:
        raise PoleInRegion(
            f"denominator root within margin of K grid (min distance {audit['min_distance']:g})"
        )

    target = RationalPair(A, B)
    f_tilde = RationalPair(A + _monomial(p).scale(d), den)
    approx_tilde = _fixed_point_check(f_tilde, idx, M)

    sup_ft_target = _diff_sup(f_tilde, target, K_lam)
    if sup_ft_target >= eps / 2:
        raise CertificateFailed("target_bound", f"|f_tilde - R| = {sup_ft_target:g} >= eps/2")

    achieved = {
        "sup_ftilde_minus_target": sup_ft_target,
        "sup_pade_error_Kn": _diff_sup(approx_tilde, f_tilde, K_n),
        "sup_f_minus_target_KN": _diff_sup(f_tilde, target, K_N),
        "inf_denominator": inf_den,
    }
    return DensityCertificate(
        "general", target, idx, region, complex(c), d, delta_tilde,
        0.5 * min(1.0 / (2 * s), eps / 2), lam, r_radius, n, s, N, eps,
        f_tilde, f_tilde, achieved, pole_audit=audit,
    )


def construct_general(
    A: ComplexPoly,
    B: ComplexPoly,
    idx: PadeIndex,
    eps: float,
    region: Region,
    n: int,
    s: int,
    N: int,
) -> DensityCertificate:
    """General-connectivity certificate for the rational target A/B.

    Requires p > deg A, q > deg B, B(0) != 0 and every root of B outside
    the region.  The certificate's f stays rational; in place of the
    pole-pushing step the denominator roots are audited against every
    exhaustion grid up to lambda + 3.
    """
    p, q = idx.p, idx.q
    if p <= A.degree or q <= B.degree:
        raise IndexTooSmall(f"need p > deg A = {A.degree} and q > deg B = {B.degree}")
    if B.coeff(0) == 0:
        raise ValueError("B(0) must be nonzero")
    if eps <= 0:
        raise ValueError("eps must be positive")
    for root in denominator_roots(B.coeffs):
        if region.contains(complex(root)):
            raise PoleInRegion(f"target pole {complex(root)} lies inside the region")

    lam, _ = choose_lambda(region, n, N)
    K_lam = exhaustion_K(region, lam)
    z_sup = sup_norm(_identity, K_lam)
    a_sup = sup_norm(A, K_lam) if not A.is_zero else 0.0
    b_sup = sup_norm(B, K_lam)
    inf_b = float(np.min(np.abs(B(K_lam.points))))
    M = default_truncation(p, q)

    c = 0.5 * inf_b ** (1.0 / q) / z_sup
    last_err = None
    for _ in range(24):
        den = B - _monomial(q).scale(c**q)
        inf_bc = float(np.min(np.abs(den(K_lam.points))))
        if inf_bc <= 0:
            c /= 2
            continue
        t1 = a_sup * abs(c) ** q * z_sup**q / (inf_b * inf_bc)
        if t1 >= eps / 4:
            c /= 2
            continue
        delta_tilde = (eps / 2 - t1) * inf_b * inf_bc / (z_sup**p * b_sup)
        try:
            t = series_from_rational(A, den, M) if not A.is_zero else TaylorSeries(
                np.zeros(M + 1)
            )
            c_dir = series_from_rational(_monomial(p), den, M)
            bad = determinant_poly_in_d(t, c_dir, idx)
            d = select_d(bad, delta_tilde)
            return build_general_certificate(
                A, B, idx, eps, region, n, s, N, complex(c), d, delta_tilde
            )
        except (NoAdmissibleD, CertificateFailed, PoleInRegion) as exc:
            last_err = exc
            c /= 2
    raise CertificateFailed("retries_exhausted", f"last failure: {last_err}")


def _clause(name, bound, measured, strict=True):
    ok = measured < bound if strict else measured <= bound
    return {
        "clause": name,
        "bound": float(bound),
        "measured": float(measured),
        "pass": bool(ok),
    }


def verify_certificate(cert: DensityCertificate, pitch: float | None = None) -> VerificationReport:
    """Recompute every claim of the certificate from scratch.

    Clause 1: f_final has Hankel membership at the index.  Clause 2: the
    approximant of f_final is within 1/s of it on K_n.  Clause 3: f_final
    is within eps of the target on K_N.  Clause 4: the triangle-inequality
    chain through f_tilde holds termwise.  Failures are reported, never
    thrown.
    """
    idx = cert.index
    p, q = idx.p, idx.q
    M = default_truncation(p, q)
    K_n = exhaustion_K(cert.region, cert.n, pitch)
    K_N = exhaustion_K(cert.region, cert.N, pitch)
    K_lam = exhaustion_K(cert.region, cert.lam, pitch)

    f_final = cert.f_final
    s_final = f_final.to_series(M)

    clauses = []
    report = hankel_determinant(s_final, idx)
    clauses.append({
        "clause": "membership",
        "bound": 1e-12,
        "measured": float(report.condition_estimate),
        "pass": bool(report.in_Dpq),
    })

    half_s = 1.0 / (2 * cert.s)
    if report.in_Dpq:
        approx_final = compute_pade(s_final, idx)
        approx_tilde = compute_pade(cert.f_tilde.to_series(M), idx)
        try:
            pade_err = _diff_sup(approx_final, f_final, K_n)
            term1 = _diff_sup(approx_final, approx_tilde, K_lam)
        except NonFiniteValue:
            pade_err = term1 = float("inf")
    else:
        pade_err = term1 = float("inf")
    term2 = _diff_sup(cert.f_tilde, f_final, K_lam)
    target_err = _diff_sup(f_final, cert.target, K_N)

    clauses.append(_clause("pade_error_Kn", 1.0 / cert.s, pade_err))
    clauses.append(_clause("target_error_KN", cert.epsilon, target_err))
    clauses.append(_clause("chain_pade_diff", half_s, term1))
    clauses.append(_clause("chain_surrogate_dist", cert.delta, term2, strict=False))
    clauses.append(_clause("chain_total", 1.0 / cert.s, term1 + term2))

    return VerificationReport(tuple(clauses), all(c["pass"] for c in clauses))


def lemma22_delta_search(
    f_tilde: RationalPair,
    idx: PadeIndex,
    lam: int,
    eps: float,
    region: Region,
    trials: int = 200,
    seed: int = 0,
) -> float:
    """Empirical stability radius: largest halving of eps such that every
    seeded perturbation of size delta/2 keeps membership and moves the
    approximant by less than eps on K_lambda.

    Deterministic for a fixed seed: trials consume the generator in index
    order, so identical inputs reproduce the returned delta bit-for-bit.
    """
    p, q = idx.p, idx.q
    M = default_truncation(p, q)
    K_lam = exhaustion_K(region, lam)
    s_ft = f_tilde.to_series(M)
    approx_ft = compute_pade(s_ft, idx)

    rng = np.random.default_rng(seed)
    delta = float(eps)
    while delta >= DELTA_FLOOR:
        ok = True
        for _ in range(trials):
            u = rng.standard_normal(p + q + 1) + 1j * rng.standard_normal(p + q + 1)
            pert = ComplexPoly(u)
            scale = sup_norm(pert, K_lam)
            if scale == 0:
                continue
            pert = pert.scale((delta / 2) / scale)
            coeffs = s_ft.coeffs.copy()
            coeffs[: p + q + 1] += pert.to_series(p + q).coeffs
            g = TaylorSeries(coeffs)
            try:
                approx_g = compute_pade(g, idx)
                moved = _diff_sup(approx_g, approx_ft, K_lam)
            except (NotInDpq, SingularSystem, NonFiniteValue):
                ok = False
                break
            if moved >= eps:
                ok = False
                break
        if ok:
            return delta
        delta /= 2
    raise NoDeltaFound("stability bisection reached its floor")
