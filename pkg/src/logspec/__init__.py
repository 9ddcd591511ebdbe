"""Log-spectral density estimation for stationary time series.

The estimator chain: a sinusoidal multitaper spectrum on a canonical
frequency grid, a variance-stabilizing log transform with chi-square
debiasing, and a final variable-bandwidth kernel smoothing stage whose
local halfwidths are selected from the data (average squared residual
fit plus a plug-in rule driven by an estimated second derivative).

A Monte Carlo harness compares three ways of arranging the log and the
smoother on a reference moving-average model.
"""

from .specmath import EULER_GAMMA, ComplexSpectrum, FrequencyGrid, dft_grid, digamma, trigamma
from .tapers import SpectralWindow, TaperSet, quartic_cross_sum, sinusoidal_tapers, spectral_window, tukey_taper
from .kernels import (
    DiscreteKernelWeights,
    InvalidHalfwidthError,
    Kernel,
    discrete_weights,
    make_kernel,
    smooth,
    smooth_variable,
)
from .multitaper import (
    DegenerateSpectrumError,
    SpectrumEstimate,
    log_multitaper,
    mean_log_single,
    multitaper_spectrum,
    single_taper_log,
)
from .bandwidth import (
    AsrCurve,
    AsrFit,
    BandwidthProfile,
    FitDegenerateError,
    HalfwidthBounds,
    asr_curve,
    fit_asr,
    h_grid_bounds,
    local_bandwidth,
    quotient_h24,
    v_of_h,
)
from .theory import (
    AsymptoticInputs,
    default_taper_count,
    degradation_ratio,
    ease,
    ease_min,
    h_opt,
    improvement_factor,
    k_opt,
    m_constant,
    mt_bias,
)
from .pipeline import AdaptiveResult, EstimatorConfig, estimate_log_spectrum
from .harness import (
    MA3_MODEL,
    MaModel,
    SimulationReport,
    ise,
    ma_generate,
    run_table1,
    true_log_spectrum,
)

__version__ = "0.1.0"

__all__ = [
    "EULER_GAMMA",
    "FrequencyGrid",
    "ComplexSpectrum",
    "dft_grid",
    "digamma",
    "trigamma",
    "TaperSet",
    "SpectralWindow",
    "sinusoidal_tapers",
    "tukey_taper",
    "quartic_cross_sum",
    "spectral_window",
    "Kernel",
    "DiscreteKernelWeights",
    "InvalidHalfwidthError",
    "make_kernel",
    "discrete_weights",
    "smooth",
    "smooth_variable",
    "SpectrumEstimate",
    "DegenerateSpectrumError",
    "multitaper_spectrum",
    "log_multitaper",
    "single_taper_log",
    "mean_log_single",
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
    "AsymptoticInputs",
    "mt_bias",
    "ease",
    "h_opt",
    "k_opt",
    "ease_min",
    "m_constant",
    "degradation_ratio",
    "improvement_factor",
    "default_taper_count",
    "EstimatorConfig",
    "AdaptiveResult",
    "estimate_log_spectrum",
    "MaModel",
    "MA3_MODEL",
    "SimulationReport",
    "ma_generate",
    "true_log_spectrum",
    "ise",
    "run_table1",
]
