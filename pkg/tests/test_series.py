import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from padeforge import (
    ComplexPoly,
    TaylorSeries,
    partial_sum,
    series_from_rational,
    series_multiply,
)
from padeforge.errors import DenominatorVanishesAtZero, TruncationExceeded


def coeffs_strategy(max_len=8):
    scal = st.tuples(
        st.floats(-5, 5, allow_nan=False), st.floats(-5, 5, allow_nan=False)
    ).map(lambda t: complex(*t))
    return st.lists(scal, min_size=1, max_size=max_len)


class TestSeriesFromRational:
    def test_geometric(self):
        s = series_from_rational(ComplexPoly([1.0]), ComplexPoly([1.0, -1.0]), 4)
        np.testing.assert_allclose(s.coeffs, np.ones(5))

    def test_one_over_one_plus_z_squared(self):
        # hand long division: 1/(1+z^2) = 1 - z^2 + z^4 - ...
        s = series_from_rational(ComplexPoly([1.0]), ComplexPoly([1.0, 0.0, 1.0]), 5)
        np.testing.assert_allclose(s.coeffs, [1, 0, -1, 0, 1, 0])

    def test_perturbed_polynomial_over_binomial(self):
        # (P + d z^p)/(1 - (cz)^q) starts P + d z^p + P (cz)^q + ...
        p, q, c, d = 3, 2, 0.1, 0.01
        P = ComplexPoly([1.0, 2.0])
        num = P + ComplexPoly([0, 0, 0, d])
        den = ComplexPoly([1.0, 0.0, -(c**2)])
        s = series_from_rational(num, den, 6)
        expected = [1.0, 2.0, 1.0 * c**2, d + 2.0 * c**2, c**4, d * c**2 + 2 * c**4]
        np.testing.assert_allclose(s.coeffs[:6], expected, atol=1e-15)

    def test_pole_at_origin_rejected(self):
        with pytest.raises(DenominatorVanishesAtZero):
            series_from_rational(ComplexPoly([1.0]), ComplexPoly([0.0, 1.0]), 3)

    @given(num=coeffs_strategy(), den=coeffs_strategy())
    @settings(max_examples=100, deadline=None)
    def test_multiply_back_reproduces_numerator(self, num, den):
        if abs(den[0]) < 0.1:
            den = [1.0 + 0j] + list(den[1:])
        M = 10
        s = series_from_rational(ComplexPoly(num), ComplexPoly(den), M)
        back = series_multiply(s, ComplexPoly(den).to_series(M), M)
        want = np.zeros(M + 1, dtype=complex)
        want[: len(num)] = num
        scale = max(np.max(np.abs(want)), np.max(np.abs(s.coeffs)) * abs(den[0]), 1.0)
        np.testing.assert_allclose(back.coeffs, want, atol=1e-12 * scale)


class TestPartialSum:
    def test_basic(self):
        sk = partial_sum(TaylorSeries([1.0, 2.0, 3.0]), 1)
        np.testing.assert_array_equal(sk.coeffs, [1.0, 2.0])

    def test_negative_order_is_zero(self):
        assert partial_sum(TaylorSeries([1.0, 1.0, 1.0]), -2).is_zero

    def test_constant(self):
        sk = partial_sum(TaylorSeries([5.0]), 0)
        assert sk.degree == 0 and sk.coeff(0) == 5.0

    def test_exceeds_truncation(self):
        with pytest.raises(TruncationExceeded):
            partial_sum(TaylorSeries([1.0]), 1)

    @given(coeffs=coeffs_strategy(), k=st.integers(0, 7))
    @settings(max_examples=50, deadline=None)
    def test_value_at_zero_is_a0(self, coeffs, k):
        k = min(k, len(coeffs) - 1)
        s = TaylorSeries(coeffs)
        assert partial_sum(s, k)(0.0) == coeffs[0]


class TestSeriesMultiply:
    def test_square_of_one_plus_z(self):
        s = TaylorSeries([1.0, 1.0, 0.0])
        out = series_multiply(s, s, 2)
        np.testing.assert_allclose(out.coeffs, [1, 2, 1])

    def test_multiply_by_z(self):
        out = series_multiply(TaylorSeries([1.0, 0.0, 0.0]), TaylorSeries([0.0, 1.0, 0.0]), 2)
        np.testing.assert_allclose(out.coeffs, [0, 1, 0])

    def test_geometric_telescopes(self):
        geom = TaylorSeries(np.ones(4))
        one_minus_z = TaylorSeries([1.0, -1.0, 0.0, 0.0])
        out = series_multiply(geom, one_minus_z, 3)
        np.testing.assert_allclose(out.coeffs, [1, 0, 0, 0], atol=1e-15)

    def test_truncation_guard(self):
        with pytest.raises(TruncationExceeded):
            series_multiply(TaylorSeries([1.0]), TaylorSeries([1.0, 1.0]), 1)

    @given(a=coeffs_strategy(6), b=coeffs_strategy(6), c=coeffs_strategy(6))
    @settings(max_examples=100, deadline=None)
    def test_commutative_associative(self, a, b, c):
        M = min(len(a), len(b), len(c)) - 1
        sa, sb, sc = TaylorSeries(a), TaylorSeries(b), TaylorSeries(c)
        ab = series_multiply(sa, sb, M)
        ba = series_multiply(sb, sa, M)
        scale = max(np.max(np.abs(ab.coeffs)), 1.0)
        np.testing.assert_allclose(ab.coeffs, ba.coeffs, atol=1e-12 * scale)
        left = series_multiply(ab, sc, M)
        right = series_multiply(sa, series_multiply(sb, sc, M), M)
        scale = max(np.max(np.abs(left.coeffs)), 1.0)
        np.testing.assert_allclose(left.coeffs, right.coeffs, atol=1e-12 * scale)


class TestInvariants:
    def test_series_rejects_nonfinite(self):
        with pytest.raises(ValueError):
            TaylorSeries([1.0, float("nan")])
        with pytest.raises(ValueError):
            TaylorSeries([float("inf")])

    def test_poly_trims_trailing_zeros(self):
        p = ComplexPoly([1.0, 2.0, 0.0, 0.0])
        assert p.degree == 1
        assert ComplexPoly([0.0, 0.0]).is_zero
