"""Multitaper spectrum estimates and their log-scale variants.

The sinusoidal-taper estimate on the canonical grid is

    S_mt(f) = delta * sum_k mu_k |zeta(f + k delta) - zeta(f - k delta)|^2

with delta = 1/(2N+2), which equals the tapered-periodogram average for
the sinusoidal family exactly and needs a single FFT.  Log variants add
the chi-square mean-log corrections: ln K - psi(K) for the average of K
tapers, and Euler's gamma for a single taper.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .specmath import EULER_GAMMA, FrequencyGrid, dft_grid, digamma
from .tapers import TaperSet, sinusoidal_tapers

__all__ = [
    "SpectrumEstimate",
    "DegenerateSpectrumError",
    "multitaper_spectrum",
    "log_multitaper",
    "single_taper_log",
    "mean_log_single",
]

_SCALES = ("power", "log")
_KINDS = ("mt", "st", "mean_log", "smoothed", "truth")

#: Power below this is treated as a degenerate (effectively zero) spectrum.
_ZERO_POWER = 1e-300


class DegenerateSpectrumError(ValueError):
    """Raised when an estimate would take the log of (numerically) zero power."""


@dataclass(frozen=True)
class SpectrumEstimate:
    """Real-valued spectrum estimate on the canonical frequency grid."""

    grid: FrequencyGrid
    values: np.ndarray = field(repr=False)
    scale: str = "power"
    k_count: int = 1
    kind: str = "mt"

    def __post_init__(self):
        if self.values.shape != (self.grid.size,):
            raise ValueError(
                f"expected {self.grid.size} values, got shape {self.values.shape}"
            )
        if self.scale not in _SCALES:
            raise ValueError(f"scale must be one of {_SCALES}, got {self.scale!r}")
        if self.kind not in _KINDS:
            raise ValueError(f"kind must be one of {_KINDS}, got {self.kind!r}")
        if self.k_count < 1:
            raise ValueError(f"taper count must be positive, got {self.k_count}")

    @property
    def half_values(self) -> np.ndarray:
        """Values at the nonredundant frequencies f_j in [0, 1/2]."""
        return self.values[: self.grid.half_count]


def _taper_differences(series: np.ndarray, k_count: int) -> tuple[FrequencyGrid, np.ndarray]:
    """Rows |zeta(f + k delta) - zeta(f - k delta)|^2 for k = 1 .. K."""
    cs = dft_grid(series)
    z = cs.values
    rows = np.empty((k_count, cs.grid.size))
    for k in range(1, k_count + 1):
        d = np.roll(z, -k) - np.roll(z, k)
        rows[k - 1] = d.real**2 + d.imag**2
    return cs.grid, rows


def multitaper_spectrum(series, tapers: TaperSet) -> SpectrumEstimate:
    """Average tapered power spectrum on the 2N+2 grid.

    Sinusoidal taper sets with K < N/2 use the transform-difference fast
    path; anything else goes through the generic tapered-periodogram
    average, which accepts arbitrary taper banks.
    """
    x = np.asarray(series, dtype=float)
    n = x.size
    if tapers.n != n:
        raise ValueError(f"taper length {tapers.n} does not match series length {n}")
    if not np.any(x):
        raise DegenerateSpectrumError("series is identically zero (no power to estimate)")
    fast = tapers.kind == "sinusoidal" and tapers.k_count < n / 2
    if tapers.kind == "sinusoidal" and not fast:
        warnings.warn(
            f"taper count {tapers.k_count} >= N/2 ({n / 2:g}); "
            "falling back to the generic tapered-periodogram path",
            RuntimeWarning,
            stacklevel=2,
        )
    if fast:
        grid, rows = _taper_differences(x, tapers.k_count)
        values = grid.spacing * (tapers.weights @ rows)
    else:
        grid = FrequencyGrid(n)
        values = np.zeros(grid.size)
        for mu, nu in zip(tapers.weights, tapers.vectors):
            zv = dft_grid(nu * x).values
            values += mu * (zv.real**2 + zv.imag**2)
    if values.min() < _ZERO_POWER:
        j = int(np.argmin(values))
        raise DegenerateSpectrumError(
            f"spectrum estimate vanishes at frequency index {j} (power {values.min():.3g})"
        )
    return SpectrumEstimate(grid, values, scale="power", k_count=tapers.k_count, kind="mt")


def log_multitaper(series, tapers: TaperSet) -> SpectrumEstimate:
    """Debiased log of the multitaper estimate: ln S_mt - (psi(K) - ln K).

    Requires uniform taper weights, for which 2K * S_mt/S is chi-square
    with 2K degrees of freedom to leading order and the correction makes
    the estimate unbiased for ln S.
    """
    if not tapers.uniform:
        raise ValueError("log calibration requires uniform taper weights (1/K each)")
    power = multitaper_spectrum(series, tapers)
    k = tapers.k_count
    values = np.log(power.values) + (np.log(k) - digamma(k))
    return SpectrumEstimate(power.grid, values, scale="log", k_count=k, kind="mt")


def single_taper_log(series, taper: TaperSet | None = None) -> SpectrumEstimate:
    """Log single-taper estimate with the Euler-gamma mean correction.

    With no taper argument this is the k = 1 sinusoidal form
    ln(|zeta(f+delta) - zeta(f-delta)|^2 / (2N+2)) + gamma, identical to
    :func:`log_multitaper` with one sinusoidal taper.  Passing a
    single-taper set (for example a Tukey window) uses the tapered
    transform ln |zeta_nu(f)|^2 + gamma instead.
    """
    x = np.asarray(series, dtype=float)
    if taper is None:
        grid, rows = _taper_differences(x, 1)
        power = grid.spacing * rows[0]
    else:
        if taper.k_count != 1:
            raise ValueError(f"single-taper reference needs exactly one taper, got {taper.k_count}")
        if taper.n != x.size:
            raise ValueError(f"taper length {taper.n} does not match series length {x.size}")
        zv = dft_grid(taper.vectors[0] * x).values
        grid = FrequencyGrid(x.size)
        power = zv.real**2 + zv.imag**2
    if power.min() < _ZERO_POWER:
        j = int(np.argmin(power))
        raise DegenerateSpectrumError(
            f"single-taper power vanishes at frequency index {j} "
            f"(f = {j / grid.size:.6g}, power {power.min():.3g})"
        )
    values = np.log(power) + EULER_GAMMA
    return SpectrumEstimate(grid, values, scale="log", k_count=1, kind="st")


def mean_log_single(series, tapers: TaperSet) -> SpectrumEstimate:
    """Average of K single-taper logs, with the same gamma correction.

    This alternative trades the ln K - psi(K) calibration for a mean of
    individually corrected logs; its variance exceeds the debiased
    log-multitaper's by a factor approaching psi'(1) = pi^2/6.
    """
    if tapers.kind != "sinusoidal":
        raise ValueError("mean-of-logs form is defined for sinusoidal taper sets")
    x = np.asarray(series, dtype=float)
    if tapers.n != x.size:
        raise ValueError(f"taper length {tapers.n} does not match series length {x.size}")
    grid, rows = _taper_differences(x, tapers.k_count)
    power = grid.spacing * rows
    if power.min() < _ZERO_POWER:
        k, j = np.unravel_index(int(np.argmin(power)), power.shape)
        raise DegenerateSpectrumError(
            f"taper {k + 1} power vanishes at frequency index {j} (power {power.min():.3g})"
        )
    values = np.log(power).mean(axis=0) + EULER_GAMMA
    return SpectrumEstimate(grid, values, scale="log", k_count=tapers.k_count, kind="mean_log")
