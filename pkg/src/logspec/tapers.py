"""Taper families and their spectral windows.

The workhorse family is the sinusoidal set nu_m^(k) = sqrt(2/(N+1)) *
sin(pi k m / (N+1)), k = 1 .. K, which is exactly orthonormal and whose
tapered transforms are differences of the zero-padded transform at
offsets +-k grid bins.  A unit-normalized Tukey (cosine-tapered) window
is provided as an alternative single-taper reference.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .specmath import ComplexSpectrum, FrequencyGrid, dft_grid

__all__ = [
    "TaperSet",
    "SpectralWindow",
    "sinusoidal_tapers",
    "tukey_taper",
    "quartic_cross_sum",
    "spectral_window",
]


@dataclass(frozen=True)
class TaperSet:
    """A bank of K tapers of length N with averaging weights.

    vectors has shape (K, N); weights has shape (K,) and sums to one.
    Rows are unit-norm.  ``kind`` records the construction so estimators
    can pick the fast evaluation path for the sinusoidal family.
    """

    vectors: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)
    kind: str = "custom"

    def __post_init__(self):
        if self.vectors.ndim != 2:
            raise ValueError("taper vectors must form a (K, N) array")
        k, n = self.vectors.shape
        if self.weights.shape != (k,):
            raise ValueError(f"expected {k} weights, got shape {self.weights.shape}")
        if not math.isclose(float(self.weights.sum()), 1.0, abs_tol=1e-12):
            raise ValueError("taper weights must sum to one")

    @property
    def k_count(self) -> int:
        return self.vectors.shape[0]

    @property
    def n(self) -> int:
        return self.vectors.shape[1]

    @property
    def uniform(self) -> bool:
        """True when every taper carries weight 1/K."""
        return bool(np.allclose(self.weights, 1.0 / self.k_count, atol=1e-12))


@dataclass(frozen=True)
class SpectralWindow:
    """Zero-padded transform of a single taper on the canonical grid."""

    taper_index: int
    grid: FrequencyGrid
    values: np.ndarray = field(repr=False)


def sinusoidal_tapers(n: int, k_count: int) -> TaperSet:
    """Build the K lowest-order sinusoidal tapers for a record of n samples.

    Parameters
    ----------
    n : int
        Record length, n >= 4.
    k_count : int
        Number of tapers, 1 <= k_count <= n.

    Returns
    -------
    TaperSet
        Rows nu_m^(k) = sqrt(2/(n+1)) sin(pi k m/(n+1)), m = 1 .. n,
        uniform weights 1/K, kind 'sinusoidal'.
    """
    if n < 4:
        raise ValueError(f"record length must be at least 4, got {n}")
    if not 1 <= k_count <= n:
        raise ValueError(f"taper count must lie in [1, {n}], got {k_count}")
    m = np.arange(1, n + 1)
    k = np.arange(1, k_count + 1)
    vectors = np.sqrt(2.0 / (n + 1)) * np.sin(np.pi * np.outer(k, m) / (n + 1))
    weights = np.full(k_count, 1.0 / k_count)
    return TaperSet(vectors, weights, kind="sinusoidal")


def tukey_taper(n: int, cosine_fraction: float = 0.2) -> TaperSet:
    """Build a unit-normalized Tukey window as a single-taper set.

    The window is flat except for cosine ramps occupying the given
    fraction of the record (half at each end), measured on the interior
    positions t_m = m/(n+1).  cosine_fraction = 1 gives the full cosine
    arch proportional to (1 - cos(2 pi m/(n+1)))/2.
    """
    if n < 4:
        raise ValueError(f"record length must be at least 4, got {n}")
    if not 0.0 < cosine_fraction <= 1.0:
        raise ValueError(f"cosine fraction must lie in (0, 1], got {cosine_fraction}")
    t = np.arange(1, n + 1) / (n + 1)
    r = cosine_fraction
    w = np.ones(n)
    lo = t < r / 2.0
    hi = t > 1.0 - r / 2.0
    w[lo] = 0.5 * (1.0 - np.cos(2.0 * np.pi * t[lo] / r))
    w[hi] = 0.5 * (1.0 - np.cos(2.0 * np.pi * (1.0 - t[hi]) / r))
    w /= np.linalg.norm(w)
    return TaperSet(w[np.newaxis, :], np.ones(1), kind="tukey")


def quartic_cross_sum(tapers: TaperSet) -> float:
    """Cross-taper quartic sum (1/K^2) sum_{k,k'} sum_n nu_n^(k)^2 nu_n^(k')^2.

    For the sinusoidal family this equals (2K+1) / (2K(N+1)) exactly; the
    direct summation here works for any taper set and serves as the
    oracle for that identity.
    """
    g = (tapers.vectors**2).mean(axis=0)
    return float(np.sum(g * g))


def spectral_window(tapers: TaperSet, k: int) -> SpectralWindow:
    """Transform taper k (1-based) onto the canonical 2N+2 grid."""
    if not 1 <= k <= tapers.k_count:
        raise ValueError(f"taper index must lie in [1, {tapers.k_count}], got {k}")
    cs: ComplexSpectrum = dft_grid(tapers.vectors[k - 1])
    return SpectralWindow(k, cs.grid, cs.values)
