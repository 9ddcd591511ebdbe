"""End-to-end adaptive log-spectrum estimation.

Stages, all on the canonical 2N+2 grid:

0. Resolve the taper count, build sinusoidal tapers, form the debiased
   log-multitaper estimate.
1. Form the rough single-taper log reference, probe the ASR over a
   coarse log-spaced halfwidth grid, bracket its minimum, evaluate the
   ASR on a fine grid there, and fit a V(h)/h^8 model to select the
   pilot halfwidth h04; a fixed quotient maps it to h24.
2. Smooth the log estimate with the (2,4) kernel at h24 to estimate the
   second derivative.
3. Convert the second derivative into a local halfwidth profile and run
   the final variable-bandwidth (0,2) smooth.

The chain is deterministic: the same series and configuration always
produce the same result.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .bandwidth import (
    AsrFit,
    BandwidthProfile,
    asr_curve,
    fit_asr,
    h_grid_bounds,
    local_bandwidth,
    quotient_h24,
)
from .kernels import make_kernel, smooth, smooth_variable
from .multitaper import SpectrumEstimate, log_multitaper, single_taper_log
from .tapers import sinusoidal_tapers, tukey_taper
from .theory import default_taper_count

__all__ = ["EstimatorConfig", "AdaptiveResult", "estimate_log_spectrum"]

_MIN_SAMPLES = 32


@dataclass(frozen=True)
class EstimatorConfig:
    """Tuning knobs for the adaptive pipeline.

    k_count: taper count, or None to use round((N/2)^(8/15)).
    reference: 'tukey' (default) for a cosine-tapered single-taper ASR
        reference, which keeps the reference residuals weakly correlated
        across frequencies; 'sinusoidal' for the k = 1 difference form.
    tukey_fraction: cosine fraction when reference = 'tukey'.
    c_reg: scale on the curvature regularizer of the local halfwidth.
    probe_lo_steps / probe_hi / probe_count: coarse ASR probe grid,
        log-spaced on [probe_lo_steps * delta, probe_hi].
    fine_count: number of halfwidths across the bracketed fine grid.
    seed: recorded for harness bookkeeping; the pipeline itself is
        deterministic and never draws random numbers.
    """

    k_count: int | None = None
    reference: str = "tukey"
    tukey_fraction: float = 0.2
    c_reg: float = 1.0
    probe_lo_steps: int = 10
    probe_hi: float = 0.45
    probe_count: int = 30
    fine_count: int = 25
    seed: int | None = None

    def __post_init__(self):
        if self.reference not in ("sinusoidal", "tukey"):
            raise ValueError(f"reference must be 'sinusoidal' or 'tukey', got {self.reference!r}")
        if self.k_count is not None and self.k_count < 1:
            raise ValueError(f"taper count must be positive, got {self.k_count}")
        if self.probe_count < 8 or self.fine_count < 8:
            raise ValueError("halfwidth grids need at least 8 points for the fit")
        if not 0.0 < self.probe_hi <= 0.5:
            raise ValueError(f"probe upper end must lie in (0, 0.5], got {self.probe_hi}")

    def resolve_k(self, n: int) -> int:
        """Taper count for a record of n samples, validated against N/4."""
        k = self.k_count if self.k_count is not None else default_taper_count(n)
        if not 1 <= k <= n / 4:
            raise ValueError(f"taper count {k} outside [1, N/4] for N={n}")
        return k


@dataclass(frozen=True)
class AdaptiveResult:
    """Final estimate with the selection diagnostics that produced it."""

    theta: SpectrumEstimate
    profile: BandwidthProfile
    fit: AsrFit
    theta2: SpectrumEstimate = field(repr=False)
    warnings: tuple[str, ...] = ()


def estimate_log_spectrum(series, config: EstimatorConfig | None = None) -> AdaptiveResult:
    """Estimate the log-spectral density of a real stationary record."""
    cfg = config or EstimatorConfig()
    x = np.asarray(series, dtype=float)
    if x.ndim != 1:
        raise ValueError(f"series must be one-dimensional, got shape {x.shape}")
    n = x.size
    if n < _MIN_SAMPLES:
        raise ValueError(f"adaptive estimation needs at least {_MIN_SAMPLES} samples, got {n}")
    if not np.all(np.isfinite(x)):
        raise ValueError("series contains non-finite samples")
    if np.ptp(x) == 0.0:
        raise ValueError("series is constant; no spectrum to estimate")

    k = cfg.resolve_k(n)

    taper_quartic = None
    if cfg.reference == "tukey":
        ref_taper = tukey_taper(n, cfg.tukey_fraction)
        theta_st = single_taper_log(x, ref_taper)
        taper_quartic = float(n * np.sum(ref_taper.vectors[0] ** 4))
    else:
        theta_st = single_taper_log(x)

    if k == 1:
        # Single-taper pipeline: the reference estimate is the estimate.
        theta_mt = theta_st
    else:
        tapers = sinusoidal_tapers(n, k)
        theta_mt = log_multitaper(x, tapers)

    k04 = make_kernel(0, 4)
    k24 = make_kernel(2, 4)
    k02 = make_kernel(0, 2)
    notes: list[str] = []

    spacing = theta_mt.grid.spacing
    probe_lo = cfg.probe_lo_steps * spacing
    if probe_lo >= cfg.probe_hi:
        raise ValueError(
            f"probe grid degenerate: lower end {probe_lo:.4g} >= upper end {cfg.probe_hi:.4g}"
        )
    probe = np.exp(np.linspace(np.log(probe_lo), np.log(cfg.probe_hi), cfg.probe_count))
    probe_curve = asr_curve(theta_st, theta_mt, k04, probe)
    bounds = h_grid_bounds(probe_curve, cfg.fine_count)
    if bounds.boundary_minimum:
        notes.append("asr-boundary-minimum: probe ASR minimized at a grid end")

    fine_curve = asr_curve(theta_st, theta_mt, k04, bounds.grid)
    fit = fit_asr(fine_curve, k04, n)
    if fit.b_clamped:
        notes.append("asr-fit-b-clamped: nonpositive bias coefficient, halfwidth pinned high")
    if fit.h_clamped:
        notes.append("asr-h-clamped: model halfwidth fell outside the bracketed range")

    h24 = quotient_h24(fit.h_opt, k04, k24, n, taper_quartic=taper_quartic)
    theta2 = smooth(theta_mt, k24, h24)
    profile = local_bandwidth(theta2, k, n, k02, fit.h_opt, c_reg=cfg.c_reg, h24=h24)
    if profile.cap_applied.any():
        notes.append(
            f"local-cap: upper halfwidth clamp active at {int(profile.cap_applied.sum())} points"
        )
    if profile.floor_count:
        notes.append(f"local-floor: lower halfwidth clamp active at {profile.floor_count} points")

    theta = smooth_variable(theta_mt, k02, profile.local)
    theta = replace(theta, k_count=k)
    return AdaptiveResult(
        theta=theta, profile=profile, fit=fit, theta2=theta2, warnings=tuple(notes)
    )
