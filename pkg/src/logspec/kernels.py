"""Polynomial smoothing kernels and grid convolution.

Kernels are minimum-variance polynomials on [-1, 1] of order (q, p):
convolving with them estimates the q-th derivative while annihilating
polynomial terms below degree p.  Discrete weights are sampled on the
frequency grid and renormalized so the 0th and q-th moment conditions
hold exactly on the grid; smoothing is circular, which on the symmetric
2N+2 grid is the same as even reflection at f = 0 and f = 1/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .multitaper import SpectrumEstimate

__all__ = [
    "Kernel",
    "DiscreteKernelWeights",
    "InvalidHalfwidthError",
    "make_kernel",
    "discrete_weights",
    "smooth",
    "smooth_variable",
    "admissible_interval",
]

#: Supported (q, p) orders and their polynomial coefficients (ascending).
_KERNEL_TABLE = {
    (0, 2): (0.75, 0.0, -0.75),
    (0, 4): (45.0 / 32.0, 0.0, -150.0 / 32.0, 0.0, 105.0 / 32.0),
    (2, 4): (-105.0 / 16.0, 0.0, 630.0 / 16.0, 0.0, -525.0 / 16.0),
}


class InvalidHalfwidthError(ValueError):
    """Halfwidth outside the admissible smoothing interval."""

    def __init__(self, h: float, lo: float, hi: float, detail: str = ""):
        self.halfwidth = h
        self.lo = lo
        self.hi = hi
        suffix = f" ({detail})" if detail else ""
        super().__init__(
            f"halfwidth {h:.6g} outside admissible interval [{lo:.6g}, {hi:.6g}]{suffix}"
        )


def admissible_interval(spacing: float) -> tuple[float, float]:
    """Admissible halfwidths for a grid of the given spacing: [2*delta, 0.5]."""
    return 2.0 * spacing, 0.5


@dataclass(frozen=True)
class Kernel:
    """Polynomial kernel of order (q, p) supported on [-1, 1]."""

    q: int
    p: int
    coefficients: tuple[float, ...]

    def __call__(self, u) -> np.ndarray:
        """Evaluate the kernel, zero outside [-1, 1]."""
        u = np.asarray(u, dtype=float)
        inside = np.abs(u) <= 1.0
        out = np.where(inside, np.polynomial.polynomial.polyval(u, self.coefficients), 0.0)
        return out

    def moment(self, m: int) -> float:
        """Exact integral of u^m * kernel(u) over [-1, 1]."""
        total = 0.0
        for i, c in enumerate(self.coefficients):
            if (m + i) % 2 == 0:
                total += c * 2.0 / (m + i + 1)
        return total

    @property
    def b_constant(self) -> float:
        """Leading bias constant B_p = (1/p!) integral of u^p kernel."""
        return self.moment(self.p) / math.factorial(self.p)

    @property
    def norm_sq(self) -> float:
        """Exact squared L2 norm, integral of kernel^2 over [-1, 1]."""
        total = 0.0
        c = self.coefficients
        for i, ci in enumerate(c):
            for j, cj in enumerate(c):
                if (i + j) % 2 == 0:
                    total += ci * cj * 2.0 / (i + j + 1)
        return total

    @property
    def at_zero(self) -> float:
        """Kernel value at the origin."""
        return self.coefficients[0]


def make_kernel(q: int, p: int) -> Kernel:
    """Return the minimum-variance kernel of order (q, p).

    Supported orders: (0, 2) for the final smoothing stage, (0, 4) for
    the pilot stage, and (2, 4) for second-derivative estimation.
    """
    try:
        coeffs = _KERNEL_TABLE[(q, p)]
    except KeyError:
        supported = sorted(_KERNEL_TABLE)
        raise ValueError(f"unsupported kernel order ({q}, {p}); supported: {supported}") from None
    return Kernel(q, p, coeffs)


@dataclass(frozen=True)
class DiscreteKernelWeights:
    """Kernel weights sampled at grid offsets j*delta, |j*delta| <= h.

    offsets runs -J .. J; weights are renormalized so the discrete
    moment conditions hold exactly: sum w = 1 for q = 0, and sum w = 0
    with sum (j*delta)^2 w = 2 for q = 2.
    """

    kernel: Kernel
    halfwidth: float
    spacing: float
    offsets: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)

    @property
    def half_taps(self) -> int:
        return int(self.offsets[-1])


def discrete_weights(kernel: Kernel, h: float, spacing: float) -> DiscreteKernelWeights:
    """Sample and renormalize kernel weights for halfwidth h on the grid."""
    lo, hi = admissible_interval(spacing)
    if not (lo <= h <= hi) or not math.isfinite(h):
        raise InvalidHalfwidthError(h, lo, hi)
    half = int(math.floor(h / spacing + 1e-12))
    offsets = np.arange(-half, half + 1)
    x = offsets * spacing
    raw = kernel(x / h) * spacing / h ** (kernel.q + 1)
    if kernel.q == 0:
        weights = raw / raw.sum()
    elif kernel.q == 2:
        # Impose sum w = 0 and sum (j delta)^2 w = 2 with a two-parameter
        # correction in span{raw, raw * u^2}, which keeps the end weights zero.
        u2 = (x / h) ** 2
        basis = np.stack([raw, raw * u2])
        a = np.array(
            [
                [basis[0].sum(), basis[1].sum()],
                [(basis[0] * x * x).sum(), (basis[1] * x * x).sum()],
            ]
        )
        coef = np.linalg.solve(a, np.array([0.0, 2.0]))
        weights = coef[0] * basis[0] + coef[1] * basis[1]
    else:
        raise ValueError(f"no discrete renormalization for derivative order q={kernel.q}")
    return DiscreteKernelWeights(kernel, float(h), float(spacing), offsets, weights)


def _circular_window(values: np.ndarray, half: int) -> np.ndarray:
    """Pad values circularly by ``half`` points on each side."""
    return np.concatenate([values[-half:], values, values[:half]])


def smooth(estimate: SpectrumEstimate, kernel: Kernel, h: float) -> SpectrumEstimate:
    """Convolve an estimate with the kernel at fixed halfwidth h.

    Returns the q-th derivative estimate for the kernel's q (the plain
    smooth for q = 0).  The convolution wraps around the full grid,
    which realizes even reflection at both f = 0 and f = 1/2 for the
    symmetric estimates produced by this package.
    """
    w = discrete_weights(kernel, h, estimate.grid.spacing)
    padded = _circular_window(estimate.values, w.half_taps)
    out = np.correlate(padded, w.weights, mode="valid")
    return SpectrumEstimate(
        grid=estimate.grid,
        values=out,
        scale=estimate.scale,
        k_count=estimate.k_count,
        kind="smoothed",
    )


def smooth_variable(
    estimate: SpectrumEstimate, kernel: Kernel, h_profile: np.ndarray
) -> SpectrumEstimate:
    """Convolve with a per-output-point halfwidth profile.

    Every profile value must be admissible; offenders are reported with
    their frequency index.  Repeated halfwidths (for example where a
    clamp is active) share cached weights.
    """
    profile = np.asarray(h_profile, dtype=float)
    grid = estimate.grid
    if profile.shape != (grid.size,):
        raise ValueError(f"profile must hold {grid.size} halfwidths, got shape {profile.shape}")
    lo, hi = admissible_interval(grid.spacing)
    bad = np.nonzero(~((profile >= lo) & (profile <= hi)))[0]
    if bad.size:
        j = int(bad[0])
        raise InvalidHalfwidthError(
            float(profile[j]), lo, hi, detail=f"at frequency index {j} of {bad.size} offending"
        )
    cache: dict[float, DiscreteKernelWeights] = {}
    half_max = int(math.floor(profile.max() / grid.spacing + 1e-12))
    padded = _circular_window(estimate.values, half_max)
    out = np.empty(grid.size)
    for i, h in enumerate(profile):
        w = cache.get(h)
        if w is None:
            w = discrete_weights(kernel, h, grid.spacing)
            cache[h] = w
        half = w.half_taps
        window = padded[i + half_max - half : i + half_max + half + 1]
        out[i] = w.weights @ window
    return SpectrumEstimate(
        grid=grid,
        values=out,
        scale=estimate.scale,
        k_count=estimate.k_count,
        kind="smoothed",
    )
