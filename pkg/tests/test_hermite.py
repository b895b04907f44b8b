import cmath
import math

import numpy as np
import pytest

from permest.hermite import (
    SurrogateInputs,
    closed_form_estimator,
    hermite_h,
    hermite_h_explicit,
    vprime_closed_form,
    vprime_sequence,
)

from conftest import assert_rel_close

XI_GRID = [0j, 1.0 + 0j, 0.5 + 0.5j]
V1_GRID = [0j, 2.0 + 0j, -2.0 + 0j, 1.2 + 0.9j, -0.6 - 0.8j, 1j]


class TestHermite:
    def test_h0_h1(self):
        for x in (0.0, 2.5, -1.0 + 3.0j):
            assert hermite_h(0, x) == 1.0
            assert hermite_h(1, x) == complex(x)

    def test_h2_at_3(self):
        assert hermite_h(2, 3.0) == pytest.approx(4.0)

    def test_h3_at_2(self):
        # He_3(x) = x^3 - 3x, so h_3(2) = (8 - 6)/6 = 1/3
        assert hermite_h(3, 2.0) == pytest.approx(1.0 / 3.0)

    def test_h4_at_0_explicit(self):
        # only the j = 2 term survives: 1/(2! * 0! * 2^2) = 1/8
        assert hermite_h_explicit(4, 0.0) == pytest.approx(1.0 / 8.0)

    def test_explicit_guard(self):
        with pytest.raises(ValueError):
            hermite_h_explicit(61, 1.0)

    def test_negative_k_rejected(self):
        with pytest.raises(ValueError):
            hermite_h(-1, 1.0)

    def test_recursion_vs_explicit_spot(self):
        for k in (5, 12, 25):
            for x in (-7.5, -0.5, 0.0, 3.0, 9.5, 1.0 + 2.0j):
                assert_rel_close(hermite_h(k, x), hermite_h_explicit(k, x), 1e-9, f"k={k} x={x}")

    def test_magnitude_bound_spot(self):
        # |h_k(x)| <= max(1,|x|)^k (k/e^2)^{-k/2}
        for k in (1, 7, 23, 50):
            for x in (-10.0, -1.0, 0.25, 4.0, 10.0):
                bound = max(1.0, abs(x)) ** k * (k / math.e**2) ** (-k / 2)
                assert abs(hermite_h(k, x)) <= bound * (1 + 1e-12)


class TestVPrime:
    def test_v0_always_one(self):
        for v1 in V1_GRID:
            for xi in XI_GRID:
                V = vprime_sequence(SurrogateInputs(v1, xi, 1.0), 5)
                assert V[0] == 1.0
                assert V[1] == v1

    def test_xi_zero_closed_form(self):
        V = vprime_sequence(SurrogateInputs(2.0, 0j, 1.0), 3)
        assert V[3] == pytest.approx(8.0 / 6.0)

    def test_both_routes_at_xi_one(self):
        inp = SurrogateInputs(0j, 1.0 + 0j, 1.0)
        V = vprime_sequence(inp, 2)
        cf = vprime_closed_form(inp, 2)
        assert V[2] == pytest.approx(-0.5)
        assert cf[2] == pytest.approx(-0.5)

    def test_complex_xi_branch_consistency(self):
        # the closed form with the principal sqrt branch must reproduce the
        # branch-free recursion, including for complex xi
        for v1 in V1_GRID:
            inp = SurrogateInputs(v1, 0.5 + 0.5j, 1.0)
            V = vprime_sequence(inp, 30, check=False)
            cf = vprime_closed_form(inp, 30)
            for k in range(31):
                scale = max(abs(V[k]), abs(cf[k]))
                if scale > 1e-250:
                    assert abs(V[k] - cf[k]) <= 1e-8 * scale

    def test_self_check_enabled_by_default(self):
        for v1 in V1_GRID:
            for xi in XI_GRID:
                vprime_sequence(SurrogateInputs(v1, xi, 1.0), 40)

    def test_tiny_xi_does_not_crash_the_check(self):
        # closed form unrepresentable (argument ~1e150 at k ~ 40) -> skipped
        vprime_sequence(SurrogateInputs(1.0, 1e-300 + 0j, 1.0), 40)

    def test_xi_bound(self):
        with pytest.raises(ValueError):
            SurrogateInputs(0j, 1.2 + 0j, 1.0)

    def test_magnitude_bound(self):
        # |V'_k| <= max(1, |V1|^k) (k/e^2)^{-k/2}
        for v1_abs in (0.0, 0.5, 1.0, 2.0, 3.0):
            for phase in (0.0, 2.0):
                v1 = v1_abs * cmath.exp(1j * phase)
                for xi in XI_GRID:
                    V = vprime_sequence(SurrogateInputs(v1, xi, 1.0), 50, check=False)
                    for k in range(1, 51):
                        bound = max(1.0, abs(v1) ** k) * (k / math.e**2) ** (-k / 2)
                        assert abs(V[k]) <= bound * (1 + 1e-12), f"k={k} v1={v1} xi={xi}"


class TestGeneratingFunction:
    def test_trivial_values(self):
        assert closed_form_estimator(SurrogateInputs(0j, 0j, 1.0)).to_complex() == 1.0
        est = closed_form_estimator(SurrogateInputs(1.0, 0j, 1.0))
        assert est.to_complex() == pytest.approx(math.e)

    def test_partial_sum_converges_to_closed_form(self):
        # sum_{k<=60} V'_k z^k reproduces exp(V1 z - xi z^2/2) to 1e-8
        for v1 in V1_GRID[:4]:
            for xi in XI_GRID:
                for z in (2.0, -1.0, 1.4j, 0.8 - 1.1j):
                    inp = SurrogateInputs(v1, xi, z)
                    V = vprime_sequence(inp, 60, check=False)
                    total = sum(V[k] * z**k for k in range(61))
                    assert abs(total - closed_form_estimator(inp).to_complex()) <= 1e-8

    def test_tail_is_negligible_beyond_t40(self):
        # The tail sum_{k>t} V'_k z^k decays geometrically once k >> |z|^4.
        # Calibrated against this oracle: for |V1| <= ln ln 10^6, |xi| <= 1,
        # |z| <= 2, the tail at t = 40 is below 1e-6 (the worst grid point
        # measures ~5e-7); at t = 20 it can still be ~5, so the threshold
        # lives at t = 40.
        theta = math.log(math.log(1e6))
        worst = {20: 0.0, 30: 0.0, 40: 0.0, 50: 0.0}
        for v1 in (theta, -theta, theta * 1j, theta * (0.6 + 0.8j), 1.0):
            for xi in XI_GRID + [-1.0 + 0j]:
                V = vprime_sequence(SurrogateInputs(v1, xi, 2.0), 200, check=False)
                for z in (2.0, -2.0, 2j, 2 * cmath.exp(0.7j)):
                    zp = z ** np.arange(201)
                    for t in worst:
                        worst[t] = max(worst[t], abs(np.sum(V[t + 1:] * zp[t + 1:])))
        assert worst[40] <= 1e-6
        assert worst[50] <= worst[40] <= worst[30] <= worst[20]
