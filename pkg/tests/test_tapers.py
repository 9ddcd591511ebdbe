"""Sinusoidal and Tukey taper banks and their spectral windows."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from logspec import (
    TaperSet,
    quartic_cross_sum,
    sinusoidal_tapers,
    spectral_window,
    tukey_taper,
)


class TestSinusoidalTapers:
    def test_analytic_form(self):
        bank = sinusoidal_tapers(6, 2)
        m = np.arange(1, 7)
        want = math.sqrt(2.0 / 7.0) * np.sin(np.pi * 2 * m / 7.0)
        np.testing.assert_allclose(bank.vectors[1], want, atol=1e-15)
        assert bank.kind == "sinusoidal"
        assert bank.uniform

    @given(st.integers(min_value=4, max_value=200), st.data())
    @settings(max_examples=40, deadline=None)
    def test_orthonormality(self, n, data):
        k = data.draw(st.integers(min_value=1, max_value=min(n, 12)))
        bank = sinusoidal_tapers(n, k)
        gram = bank.vectors @ bank.vectors.T
        np.testing.assert_allclose(gram, np.eye(k), atol=1e-10)

    @pytest.mark.parametrize("n,k", [(32, 3), (128, 9), (1024, 28)])
    def test_quartic_cross_sum_identity(self, n, k):
        got = quartic_cross_sum(sinusoidal_tapers(n, k))
        assert got == pytest.approx((2 * k + 1) / (2.0 * k * (n + 1)), abs=1e-12)

    def test_bounds(self):
        with pytest.raises(ValueError):
            sinusoidal_tapers(3, 1)
        with pytest.raises(ValueError):
            sinusoidal_tapers(16, 0)
        with pytest.raises(ValueError):
            sinusoidal_tapers(16, 17)


class TestTukeyTaper:
    def test_unit_norm_and_flat_middle(self):
        bank = tukey_taper(100, 0.2)
        w = bank.vectors[0]
        assert np.linalg.norm(w) == pytest.approx(1.0, abs=1e-12)
        # ramps occupy 10% of the record at each end; the middle is flat
        middle = w[20:80]
        assert np.ptp(middle) == pytest.approx(0.0, abs=1e-15)
        assert bank.kind == "tukey"
        assert bank.k_count == 1

    def test_symmetry(self):
        w = tukey_taper(63, 0.4).vectors[0]
        np.testing.assert_allclose(w, w[::-1], atol=1e-14)

    def test_full_fraction_is_cosine_arch(self):
        w = tukey_taper(50, 1.0).vectors[0]
        t = np.arange(1, 51) / 51.0
        arch = 0.5 * (1.0 - np.cos(2.0 * np.pi * t))
        np.testing.assert_allclose(w, arch / np.linalg.norm(arch), atol=1e-12)

    def test_fraction_domain(self):
        with pytest.raises(ValueError):
            tukey_taper(64, 0.0)
        with pytest.raises(ValueError):
            tukey_taper(64, 1.5)


class TestTaperSetContract:
    def test_weights_must_sum_to_one(self):
        v = np.eye(2, 8)
        with pytest.raises(ValueError, match="sum to one"):
            TaperSet(v, np.array([0.7, 0.7]))

    def test_weight_shape(self):
        with pytest.raises(ValueError, match="weights"):
            TaperSet(np.eye(2, 8), np.ones(3) / 3.0)


class TestSpectralWindow:
    """Window peak geometry on the canonical grid.

    The k-th window concentrates at +-k grid bins.  For k >= 2 the two
    images are far enough apart that |V| peaks exactly at bin k; for
    k = 1 they overlap constructively at f = 0, and the true maximum of
    the magnitude sits at bin 0 (the sum of all taper samples), above
    the self-term sqrt((N+1)/2) at bin 1.
    """

    def test_peak_positions(self):
        bank = sinusoidal_tapers(64, 5)
        half = 65
        for k in range(1, 6):
            mag = np.abs(spectral_window(bank, k).values[:half])
            assert int(np.argmax(mag)) == (0 if k == 1 else k)
            assert mag[k] == pytest.approx(math.sqrt(65.0 / 2.0), abs=1e-10)

    def test_k1_overlap_value(self):
        bank = sinusoidal_tapers(64, 1)
        w = spectral_window(bank, 1)
        assert abs(w.values[0]) == pytest.approx(float(bank.vectors[0].sum()), abs=1e-10)
        assert abs(w.values[0]) > math.sqrt(65.0 / 2.0)

    def test_k1_odd_bins_vanish(self):
        # Away from the overlap, the k = 1 window is supported on bins
        # {0, +-1, +-2}: odd bins from |j| = 3 on cancel exactly.
        w = spectral_window(sinusoidal_tapers(64, 1), 1)
        mag = np.abs(w.values[:65])
        assert np.max(mag[3::2]) < 1e-12

    def test_index_bounds(self):
        bank = sinusoidal_tapers(16, 2)
        with pytest.raises(ValueError):
            spectral_window(bank, 0)
        with pytest.raises(ValueError):
            spectral_window(bank, 3)
