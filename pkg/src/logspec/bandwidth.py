"""Data-driven halfwidth selection for the smoothing stages.

The pilot halfwidth comes from an average squared residual (ASR) curve:
the log-multitaper estimate is smoothed with the (0,4) kernel over a
grid of halfwidths and compared against a rough single-taper log
reference.  A two-parameter model a*V(h) + b*h^8 is fit to the curve;
its variance-bias tradeoff yields the pilot h_{0,4}, a fixed quotient
maps it to the second-derivative halfwidth h_{2,4}, and the estimated
second derivative then sets a local plug-in halfwidth for the final
(0,2) stage.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .kernels import Kernel, admissible_interval, discrete_weights, smooth
from .multitaper import SpectrumEstimate
from .specmath import trigamma

__all__ = [
    "AsrCurve",
    "AsrFit",
    "BandwidthProfile",
    "HalfwidthBounds",
    "FitDegenerateError",
    "asr_curve",
    "v_of_h",
    "fit_asr",
    "h_grid_bounds",
    "quotient_h24",
    "local_bandwidth",
]


class FitDegenerateError(ValueError):
    """Raised when the ASR curve cannot support the two-parameter fit."""


@dataclass(frozen=True)
class AsrCurve:
    """Average squared residual versus halfwidth.

    values[l] is the mean over the nonredundant frequencies f_j in
    [0, 1/2] of |reference - smooth(smoothed_input, h_l)|^2.
    """

    halfwidths: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)
    reference: SpectrumEstimate = field(repr=False)
    smoothed_input: SpectrumEstimate = field(repr=False)

    def __post_init__(self):
        if self.halfwidths.shape != self.values.shape or self.halfwidths.ndim != 1:
            raise ValueError("halfwidths and values must be matching one-dimensional arrays")
        if np.any(np.diff(self.halfwidths) <= 0):
            raise ValueError("halfwidth grid must be strictly increasing")
        if not np.all(np.isfinite(self.values)) or np.any(self.values < 0):
            raise ValueError("ASR values must be finite and nonnegative")


@dataclass(frozen=True)
class AsrFit:
    """Result of the a*V(h) + b*h^8 fit and the halfwidth it selects."""

    a: float
    b: float
    h_grid: np.ndarray = field(repr=False)
    h_opt: float
    norm_sq: float
    at_zero: float
    b_clamped: bool = False
    h_clamped: bool = False


@dataclass(frozen=True)
class HalfwidthBounds:
    """Bracketed halfwidth range and the fine grid spanning it."""

    h_lo: float
    h_hi: float
    grid: np.ndarray = field(repr=False)
    boundary_minimum: bool = False


@dataclass(frozen=True)
class BandwidthProfile:
    """Halfwidths chosen for the smoothing stages.

    local[j] is the final-stage halfwidth at grid point j, already
    clamped to [max(2 delta, K/N), min(2 h04, 0.5)]; cap_applied marks
    points where the regularization cap was the binding constraint.
    """

    h04: float
    h24: float
    local: np.ndarray = field(repr=False)
    cap_applied: np.ndarray = field(repr=False)
    floor_count: int = 0


def asr_curve(
    theta_st: SpectrumEstimate,
    theta_mt: SpectrumEstimate,
    kernel: Kernel,
    h_grid,
) -> AsrCurve:
    """Average squared residual between the reference and smoothed input.

    The mean runs over the N + 2 nonredundant grid frequencies in
    [0, 1/2]; redundant mirror points would only double-count.
    """
    if theta_st.grid.n != theta_mt.grid.n:
        raise ValueError("reference and input estimates live on different grids")
    if theta_st.scale != "log" or theta_mt.scale != "log":
        raise ValueError("ASR is defined on log-scale estimates")
    h_grid = np.asarray(h_grid, dtype=float)
    half = theta_mt.grid.half_count
    ref = theta_st.values[:half]
    values = np.empty(h_grid.size)
    for i, h in enumerate(h_grid):
        sm = smooth(theta_mt, kernel, float(h))
        r = ref - sm.values[:half]
        values[i] = float(r @ r) / half
    return AsrCurve(h_grid, values, theta_st, theta_mt)


def v_of_h(kernel: Kernel, h: float, n: int) -> float:
    """Residual variance shape V(h) = sum_j (w_j(h) - delta_0j)^2.

    Uses the same renormalized discrete weights as the smoother on the
    2N+2 grid.  V -> 0 as the kernel support shrinks to one point and
    approaches 1 + (||kappa||^2 - 2 kappa(0)) / ((2N+2) h) for large Nh.
    """
    spacing = 1.0 / (2 * n + 2)
    w = discrete_weights(kernel, h, spacing).weights
    center = w.size // 2
    return float(w @ w - 2.0 * w[center] + 1.0)


def fit_asr(curve: AsrCurve, kernel: Kernel, n: int) -> AsrFit:
    """Fit ASR(h) ~ a V(h) + b h^8 and pick the tradeoff halfwidth.

    Ordinary least squares in (a, b); the selected halfwidth is
    h = (a ||kappa||^2 / (8 b))^(1/9) clamped to the curve's range.
    A nonpositive fitted b is clamped to 1e-12 and the halfwidth pinned
    to the upper end, with the flag recorded.
    """
    h = curve.halfwidths
    if h.size < 8:
        raise FitDegenerateError(
            f"ASR fit needs at least 8 halfwidths spanning the bracket, got {h.size}"
        )
    vh = np.array([v_of_h(kernel, float(x), n) for x in h])
    design = np.column_stack([vh, h**8])
    coef, *_ = np.linalg.lstsq(design, curve.values, rcond=None)
    a, b = float(coef[0]), float(coef[1])
    b_clamped = False
    if a <= 0.0:
        a = 1e-12
    if b <= 0.0:
        b = 1e-12
        b_clamped = True
    h_lo, h_hi = float(h[0]), float(h[-1])
    if b_clamped:
        h_sel, h_clamped = h_hi, True
    else:
        h_raw = (a * kernel.norm_sq / (8.0 * b)) ** (1.0 / 9.0)
        h_sel = min(max(h_raw, h_lo), h_hi)
        h_clamped = h_sel != h_raw
    return AsrFit(
        a=a,
        b=b,
        h_grid=h,
        h_opt=h_sel,
        norm_sq=kernel.norm_sq,
        at_zero=kernel.at_zero,
        b_clamped=b_clamped,
        h_clamped=h_clamped,
    )


def h_grid_bounds(curve_probe: AsrCurve, count: int = 25) -> HalfwidthBounds:
    """Bracket the ASR minimum and lay a fine halfwidth grid across it.

    Walks outward from the probe minimizer to the first probe points
    where ASR >= 2 * ASR_min (or the probe ends) and returns ``count``
    equispaced halfwidths across that bracket.  A minimum on the probe
    boundary is flagged; the failing side defaults to the probe end.
    """
    h = curve_probe.halfwidths
    vals = curve_probe.values
    i_min = int(np.argmin(vals))
    threshold = 2.0 * vals[i_min]
    boundary = i_min == 0 or i_min == h.size - 1
    i_lo = i_min
    while i_lo > 0 and vals[i_lo] < threshold:
        i_lo -= 1
    i_hi = i_min
    while i_hi < h.size - 1 and vals[i_hi] < threshold:
        i_hi += 1
    h_lo, h_hi = float(h[i_lo]), float(h[i_hi])
    return HalfwidthBounds(h_lo, h_hi, np.linspace(h_lo, h_hi, count), boundary)


def quotient_h24(
    h04: float, k04: Kernel, k24: Kernel, n: int, taper_quartic: float | None = None
) -> float:
    """Map the pilot halfwidth to the second-derivative halfwidth.

    h24 = H * h04 with

        H = (10 B04^2 ||k24||^2 / (B24^2 ||k04||^2))^(1/9)
            * (pi^2 * taper_quartic / 6)^(1/9),

    where taper_quartic = N sum nu^4 of the single-taper ASR reference
    (3N/(2N+2) for the k = 1 sinusoidal taper, the default); the second
    factor undoes the reference's variance inflation.  The result is
    clamped to the admissible smoothing interval.
    """
    if taper_quartic is None:
        taper_quartic = 3.0 * n / (2.0 * n + 2.0)
    kernel_factor = (
        10.0 * k04.b_constant**2 * k24.norm_sq / (k24.b_constant**2 * k04.norm_sq)
    ) ** (1.0 / 9.0)
    taper_factor = (math.pi**2 * taper_quartic / 6.0) ** (1.0 / 9.0)
    lo, hi = admissible_interval(1.0 / (2 * n + 2))
    return float(min(max(kernel_factor * taper_factor * h04, lo), hi))


def local_bandwidth(
    theta2: SpectrumEstimate,
    k_count: int,
    n: int,
    kernel: Kernel,
    h04: float,
    c_reg: float = 1.0,
    h24: float | None = None,
) -> BandwidthProfile:
    """Plug-in local halfwidth profile for the final smoothing stage.

    h0(f_j) = [ (K+1/2) psi'(K) ||kappa||^2
                / (4 B_2^2 N (theta''(f_j)^2 + delta_reg^2)) ]^(1/5),

    clamped to [max(2 delta, K/N), min(2 h04, 0.5)].  The regularizer
    delta_reg is the curvature level at which the unclamped halfwidth
    reaches 2 h04, scaled by c_reg, so the cap engages smoothly rather
    than through division by a vanishing curvature.
    """
    if kernel.q != 0:
        raise ValueError("final-stage kernel must have derivative order q = 0")
    grid = theta2.grid
    if grid.n != n:
        raise ValueError(f"second-derivative estimate is for N={grid.n}, expected {n}")
    level = (k_count + 0.5) * trigamma(k_count)
    b2 = kernel.b_constant
    scale = level * kernel.norm_sq / (4.0 * b2 * b2 * n)
    lo, hi = admissible_interval(grid.spacing)
    floor = max(lo, k_count / n)
    cap = max(min(2.0 * h04, hi), floor)
    delta_reg = c_reg * math.sqrt(scale) / (2.0 * h04) ** 2.5
    raw = (scale / (theta2.values**2 + delta_reg**2)) ** 0.2
    local = np.clip(raw, floor, cap)
    cap_applied = raw > cap
    floor_count = int(np.count_nonzero(raw < floor))
    if h24 is None:
        h24 = float("nan")
    return BandwidthProfile(
        h04=float(h04),
        h24=float(h24),
        local=local,
        cap_applied=cap_applied,
        floor_count=floor_count,
    )
