"""Closed-form asymptotic error expressions and their minimizers."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.optimize import minimize_scalar
from scipy.special import polygamma

from logspec import (
    AsymptoticInputs,
    default_taper_count,
    degradation_ratio,
    ease,
    ease_min,
    h_opt,
    improvement_factor,
    k_opt,
    m_constant,
    make_kernel,
)

K02 = make_kernel(0, 2)
K24 = make_kernel(2, 4)


class TestDefaultTaperCount:
    def test_reference_sizes(self):
        assert default_taper_count(128) == 9
        assert default_taper_count(1024) == 28

    def test_monotone(self):
        counts = [default_taper_count(n) for n in range(8, 4096, 64)]
        assert all(b >= a for a, b in zip(counts, counts[1:]))
        assert default_taper_count(4) == 1


class TestEase:
    def test_variance_level(self):
        inputs = AsymptoticInputs(n=1024, k_count=1, kernel=K02, deriv_p=1.0)
        assert inputs.variance_level == pytest.approx(math.pi**2 / 4.0, abs=1e-12)
        # (K + 1/2) psi'(K) = 1 + 1/K + O(1/K^2)
        big = AsymptoticInputs(n=1024, k_count=400, kernel=K02, deriv_p=1.0)
        assert big.variance_level == pytest.approx(1.0 + 1.0 / 400, abs=1e-5)

    def test_components(self):
        inputs = AsymptoticInputs(n=512, k_count=9, kernel=K02, deriv_p=30.0)
        b2, v, total = ease(0.05, inputs)
        want_b = (K02.b_constant * 30.0 * 0.05**2) ** 2
        want_v = 9.5 * float(polygamma(1, 9)) * 0.6 / (512 * 0.05)
        assert b2 == pytest.approx(want_b, rel=1e-12)
        assert v == pytest.approx(want_v, rel=1e-12)
        assert total == pytest.approx(want_b + want_v, rel=1e-12)

    def test_h_opt_stationarity(self):
        """The closed form agrees with numeric minimization of the EASE."""
        inputs = AsymptoticInputs(n=1024, k_count=28, kernel=K02, deriv_p=55.0)
        h = h_opt(inputs)
        res = minimize_scalar(
            lambda t: ease(t, inputs)[2], bounds=(1e-4, 0.5), method="bounded",
            options={"xatol": 1e-12},
        )
        assert h == pytest.approx(res.x, rel=1e-6)
        assert ease_min(inputs) == pytest.approx(ease(h, inputs)[2], rel=1e-12)

    def test_variance_to_bias_ratio_at_optimum(self):
        # For a (0,2) kernel the minimizer balances var = 4 * bias^2.
        inputs = AsymptoticInputs(n=2048, k_count=12, kernel=K02, deriv_p=-17.0)
        b2, v, _ = ease(h_opt(inputs), inputs)
        assert v == pytest.approx(4.0 * b2, rel=1e-10)

    def test_second_derivative_kernel_orders(self):
        inputs = AsymptoticInputs(n=1024, k_count=28, kernel=K24, deriv_p=100.0)
        h = h_opt(inputs)
        b2, v, _ = ease(h, inputs)
        # var = (2(p-q)/(2q+1))^-1... for (2,4): var/bias^2 = 4/5
        assert v / b2 == pytest.approx(0.8, rel=1e-10)

    def test_domain_errors(self):
        inputs = AsymptoticInputs(n=512, k_count=9, kernel=K02, deriv_p=0.0)
        with pytest.raises(ValueError, match="derivative is zero"):
            h_opt(inputs)
        with pytest.raises(ValueError, match="positive"):
            ease(0.0, AsymptoticInputs(n=512, k_count=9, kernel=K02, deriv_p=1.0))

    def test_k_opt_fallback(self):
        inputs = AsymptoticInputs(n=512, k_count=9, kernel=K02, deriv_p=1.0)
        assert k_opt(inputs, 0.05) == default_taper_count(512)
        curved = AsymptoticInputs(n=512, k_count=9, kernel=K02, deriv_p=1.0, curvature_term=5.0)
        assert k_opt(curved, 0.05) >= 1


class TestShapeConstants:
    def test_m_constants(self):
        assert m_constant(0, 2) == pytest.approx(1.6493848884661177, abs=1e-12)
        # independent recomputation at another order
        r = 1.0 / 8.0
        assert m_constant(0, 4) == pytest.approx(r ** (8.0 / 9.0) + 8.0 ** (1.0 / 9.0), abs=1e-12)
        with pytest.raises(ValueError):
            m_constant(2, 2)

    def test_improvement_factor_values(self):
        assert improvement_factor(1.5) == pytest.approx((math.pi**2 / 4.0) ** 0.8, abs=1e-12)
        assert improvement_factor(1.5) == pytest.approx(2.0596, abs=5e-5)
        quartic_128 = 3.0 * 128 / 258.0
        assert improvement_factor(quartic_128) == pytest.approx(2.0469, abs=5e-5)
        with pytest.raises(ValueError):
            improvement_factor(0.0)


class TestDegradationRatio:
    def test_constant_profile(self):
        assert degradation_ratio(np.full(64, 3.3)) == pytest.approx(1.0, abs=1e-12)
        assert degradation_ratio(np.zeros(16)) == 1.0

    def test_two_level_profile(self):
        # half quiet, half curved: ((c^2/2)^(1/5)) / (c^(2/5)/2) = 2^(4/5)
        prof = np.concatenate([np.zeros(50), np.full(50, 7.0)])
        assert degradation_ratio(prof) == pytest.approx(2.0**0.8, rel=1e-12)
        assert degradation_ratio(prof) == pytest.approx(1.7411, abs=5e-5)

    @given(
        st.lists(
            st.floats(min_value=0.0, max_value=1e3).map(lambda v: 0.0 if v < 1e-6 else v),
            min_size=2,
            max_size=60,
        )
    )
    @settings(max_examples=60, deadline=None)
    def test_never_below_one(self, values):
        # Jensen: (mean p^2)^(1/5) >= (mean (p^2)^(1/5))... with p >= 0
        assert degradation_ratio(np.array(values)) >= 1.0 - 1e-12

    def test_shape_contract(self):
        with pytest.raises(ValueError):
            degradation_ratio(np.zeros((4, 4)))
        with pytest.raises(ValueError):
            degradation_ratio([1.0])
