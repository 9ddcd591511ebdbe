"""Grid conventions, the zero-padded transform, and psi/psi'."""

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.special import polygamma

from logspec import EULER_GAMMA, ComplexSpectrum, FrequencyGrid, dft_grid, digamma, trigamma

from conftest import zeta_direct


class TestFrequencyGrid:
    def test_canonical_sizes(self):
        g = FrequencyGrid(128)
        assert g.size == 258
        assert g.spacing == 1.0 / 258
        assert g.half_count == 130
        assert g.frequencies[0] == 0.0
        assert g.frequencies[129] == pytest.approx(0.5)
        assert g.frequencies[-1] < 1.0

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            FrequencyGrid(0)


class TestDftGrid:
    def test_matches_direct_sum(self, rng):
        x = rng.normal(size=17)
        got = dft_grid(x).values
        np.testing.assert_allclose(got, zeta_direct(x), atol=1e-10)

    def test_hermitian_symmetry(self, rng):
        z = dft_grid(rng.normal(size=32)).values
        np.testing.assert_allclose(z[1:], np.conj(z[1:][::-1]), atol=1e-12)

    def test_one_based_phase(self):
        # A single unit sample at m = 1 transforms to exp(-2 pi i f).
        x = np.zeros(8)
        x[0] = 1.0
        z = dft_grid(x)
        f = z.grid.frequencies
        np.testing.assert_allclose(z.values, np.exp(-2j * np.pi * f), atol=1e-12)

    def test_input_validation(self):
        with pytest.raises(ValueError, match="one-dimensional"):
            dft_grid(np.zeros((3, 3)))
        with pytest.raises(ValueError, match="at least 4"):
            dft_grid(np.zeros(3))

    def test_shape_contract(self):
        with pytest.raises(ValueError, match="transform values"):
            ComplexSpectrum(FrequencyGrid(8), np.zeros(5, dtype=complex))


class TestPsiFunctions:
    def test_special_values(self):
        assert digamma(1.0) == pytest.approx(-EULER_GAMMA, abs=1e-12)
        assert trigamma(1.0) == pytest.approx(math.pi**2 / 6.0, abs=1e-12)
        assert digamma(2.0) == pytest.approx(1.0 - EULER_GAMMA, abs=1e-12)
        # psi(1/2) = -gamma - 2 ln 2, psi'(1/2) = pi^2 / 2
        assert digamma(0.5) == pytest.approx(-EULER_GAMMA - 2 * math.log(2.0), abs=1e-12)
        assert trigamma(0.5) == pytest.approx(math.pi**2 / 2.0, abs=1e-12)

    @given(st.floats(min_value=0.05, max_value=200.0))
    def test_matches_scipy(self, x):
        assert digamma(x) == pytest.approx(float(polygamma(0, x)), abs=1e-10)
        assert trigamma(x) == pytest.approx(float(polygamma(1, x)), abs=1e-10)

    @given(st.floats(min_value=0.05, max_value=100.0))
    def test_recurrences(self, x):
        assert digamma(x + 1.0) - digamma(x) == pytest.approx(1.0 / x, rel=1e-10)
        assert trigamma(x) - trigamma(x + 1.0) == pytest.approx(1.0 / x**2, rel=1e-10)

    @pytest.mark.parametrize("fn", [digamma, trigamma])
    @pytest.mark.parametrize("bad", [0.0, -1.0, math.nan, math.inf])
    def test_domain(self, fn, bad):
        with pytest.raises(ValueError):
            fn(bad)
