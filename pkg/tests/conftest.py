"""Shared helpers: independent slow-path oracles the fast code must match."""

import numpy as np
import pytest

from logspec import FrequencyGrid, SpectrumEstimate


def zeta_direct(x: np.ndarray) -> np.ndarray:
    """O(N M) transform sum_m x_m exp(-2 pi i m f_j) on the 2N+2 grid.

    Deliberately avoids the FFT so it can serve as an oracle for it.
    """
    n = x.size
    m_grid = 2 * n + 2
    m = np.arange(1, n + 1)
    freqs = np.arange(m_grid) / m_grid
    return np.array([(x * np.exp(-2j * np.pi * m * f)).sum() for f in freqs])


def symmetric_estimate(n: int, rng, scale: str = "log") -> SpectrumEstimate:
    """Random estimate with the even symmetry real spectra have."""
    grid = FrequencyGrid(n)
    half = rng.normal(size=grid.half_count)
    values = np.concatenate([half, half[-2:0:-1]])
    return SpectrumEstimate(grid, values, scale=scale, k_count=1, kind="st")


@pytest.fixture
def rng():
    return np.random.default_rng(20260814)
