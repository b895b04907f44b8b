import math

import numpy as np
import pytest

from permest.coefficients import (
    coefficient_submatrix,
    coefficients_interpolation,
    log_falling_factorial,
    truncated_series,
)
from permest.exact import CapacityError, log_factorial, permanent_of_J_plus_zA, permanent_ryser

from conftest import assert_rel_close, random_complex_matrix


class TestFallingFactorial:
    @pytest.mark.parametrize("n,k,expected", [(5, 0, 1), (5, 2, 20), (5, 5, 120), (10, 3, 720)])
    def test_values(self, n, k, expected):
        assert math.exp(log_falling_factorial(n, k)) == pytest.approx(expected, rel=1e-12)

    def test_k_above_n_rejected(self):
        with pytest.raises(ValueError):
            log_falling_factorial(5, 6)
        with pytest.raises(ValueError):
            log_falling_factorial(5, -1)


class TestSubmatrixCoefficient:
    def test_k0_is_one(self, rng):
        A = random_complex_matrix(rng, 5)
        assert coefficient_submatrix(A, 0) == 1.0

    def test_k1_is_normalized_entry_sum(self, rng):
        A = random_complex_matrix(rng, 6)
        assert_rel_close(coefficient_submatrix(A, 1), A.sum() / 6, 1e-12)

    def test_kn_is_normalized_permanent(self, rng):
        A = random_complex_matrix(rng, 5)
        expected = permanent_ryser(A).to_complex() / math.factorial(5)
        assert_rel_close(coefficient_submatrix(A, 5), expected, 1e-10)

    def test_budget_guard_names_budget(self, rng):
        A = random_complex_matrix(rng, 24)
        with pytest.raises(CapacityError, match="budget"):
            coefficient_submatrix(A, 12, budget=1e6)


class TestInterpolation:
    def test_zero_matrix(self):
        series = coefficients_interpolation(np.zeros((5, 5)))
        assert series.coeffs[0] == 1.0
        assert np.all(np.abs(series.coeffs[1:]) < 1e-14)
        assert series.method == "interpolation"

    def test_identity_2x2(self):
        # q(z) = ((1+z)^2 + 1)/2 = 1 + z + z^2/2
        series = coefficients_interpolation(np.eye(2))
        np.testing.assert_allclose(series.coeffs, [1.0, 1.0, 0.5], atol=1e-13)

    def test_full_series_length(self, rng):
        A = random_complex_matrix(rng, 6)
        assert coefficients_interpolation(A).coeffs.shape == (7,)

    def test_matches_submatrix_route(self, rng):
        for _ in range(10):
            A = random_complex_matrix(rng, 6)
            series = coefficients_interpolation(A)
            for k in range(4):
                assert_rel_close(series.coeffs[k], coefficient_submatrix(A, k), 1e-8, f"k={k}")


class TestTruncatedSeries:
    def test_t0_is_one(self, rng):
        series = coefficients_interpolation(random_complex_matrix(rng, 4))
        assert truncated_series(series, 1.7 - 0.3j, 0) == 1.0

    def test_z0_is_one(self, rng):
        series = coefficients_interpolation(random_complex_matrix(rng, 4))
        assert truncated_series(series, 0.0, 4) == 1.0

    def test_t_too_large(self, rng):
        series = coefficients_interpolation(random_complex_matrix(rng, 4))
        with pytest.raises(ValueError):
            truncated_series(series, 1.0, 5)

    def test_full_series_reproduces_normalized_permanent(self, rng):
        # expansion identity at full t: sum_k a_k z^k = Per(J + zA)/n!
        for n in (3, 5, 8):
            A = random_complex_matrix(rng, n)
            series = coefficients_interpolation(A)
            for _ in range(3):
                z = (rng.standard_normal() + 1j * rng.standard_normal()) * 0.9
                lhs = truncated_series(series, z, n)
                p = permanent_of_J_plus_zA(A, z)
                rhs = math.exp(p.log_mag - log_factorial(n)) * np.exp(1j * p.phase)
                assert_rel_close(lhs, rhs, 1e-8, f"n={n} z={z}")
