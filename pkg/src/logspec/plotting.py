"""Figure rendering for the CLI report paths.

Each helper writes a PNG next to the delimited output it illustrates:
the estimated log-spectrum with its halfwidth profile, the ASR curve
with its fitted model, and the Monte Carlo score summary.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .bandwidth import AsrCurve, AsrFit, v_of_h
from .harness import SimulationReport
from .kernels import make_kernel
from .multitaper import SpectrumEstimate
from .pipeline import AdaptiveResult

__all__ = ["save_estimate_figure", "save_asr_figure", "save_simulation_figure"]


def save_estimate_figure(
    result: AdaptiveResult, path, truth: SpectrumEstimate | None = None
) -> None:
    """Plot the estimate and its local halfwidth profile over [0, 1/2]."""
    grid = result.theta.grid
    half = grid.half_count
    f = grid.frequencies[:half]
    fig, (ax1, ax2) = plt.subplots(
        2, 1, sharex=True, figsize=(7.0, 6.0), gridspec_kw={"height_ratios": (2.2, 1.0)}
    )
    ax1.plot(f, result.theta.values[:half], color="tab:blue", label="adaptive estimate")
    if truth is not None:
        ax1.plot(f, truth.values[:half], color="black", lw=0.9, ls="--", label="true log-spectrum")
    ax1.set_ylabel("log spectral density")
    ax1.legend(frameon=False)
    ax2.plot(f, result.profile.local[:half], color="tab:red")
    ax2.axhline(result.profile.h04, color="gray", lw=0.8, ls=":", label="pilot h04")
    ax2.set_ylabel("local halfwidth")
    ax2.set_xlabel("frequency (cycles/sample)")
    ax2.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)


def save_asr_figure(curve: AsrCurve, fit: AsrFit, n: int, path) -> None:
    """Plot the ASR points with the fitted a*V(h) + b*h^8 model."""
    kernel = make_kernel(0, 4)
    hs = np.linspace(curve.halfwidths[0], curve.halfwidths[-1], 200)
    model = np.array([fit.a * v_of_h(kernel, float(h), n) + fit.b * h**8 for h in hs])
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(curve.halfwidths, curve.values, "o", ms=4, color="tab:blue", label="ASR")
    ax.plot(hs, model, color="tab:orange", label="fitted a V(h) + b h^8")
    ax.axvline(fit.h_opt, color="tab:red", lw=0.9, ls="--", label=f"h04 = {fit.h_opt:.4f}")
    ax.set_xlabel("halfwidth h")
    ax.set_ylabel("average squared residual")
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)


def save_simulation_figure(report: SimulationReport, path) -> None:
    """Plot per-method ISE distributions and the aggregate scores."""
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9.0, 4.0))
    data = [report.ise_by_method[m] for m in report.methods]
    labels = [f"method {m}" for m in report.methods]
    ax1.boxplot(data, tick_labels=labels, showfliers=True)
    ax1.set_ylabel("ISE")
    ax1.set_title(f"N = {report.n}, {report.completed} realizations")
    mise, max_ise = report.mise, report.max_ise
    xs = np.arange(len(report.methods))
    ax2.bar(xs - 0.18, [mise[m] for m in report.methods], width=0.36, label="MISE")
    ax2.bar(xs + 0.18, [max_ise[m] for m in report.methods], width=0.36, label="MaxISE")
    ax2.set_xticks(xs, labels)
    ax2.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)
