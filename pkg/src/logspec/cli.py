"""Command-line interface.

Subcommands:

* ``tapers``    dump a taper bank as CSV
* ``kernels``   dump the supported kernel constants as CSV
* ``theory``    dump the asymptotic constants for a given N (and K)
* ``generate``  draw a reference-model realization to a text file
* ``estimate``  estimate the log-spectrum of a series file
* ``simulate``  run the Monte Carlo estimator comparison

``estimate`` and ``simulate`` accept ``--plot`` to render PNG figures
next to their delimited outputs.
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from .bandwidth import v_of_h
from .harness import (
    MA3_MODEL,
    ma_generate,
    run_table1,
    true_log_spectrum,
    write_per_realization_csv,
    write_report_csv,
)
from .kernels import _KERNEL_TABLE, make_kernel, smooth
from .multitaper import log_multitaper, mean_log_single, single_taper_log
from .pipeline import EstimatorConfig, estimate_log_spectrum
from .specmath import FrequencyGrid
from .tapers import sinusoidal_tapers, tukey_taper
from .theory import default_taper_count, improvement_factor, m_constant

__all__ = ["main"]


def _out_handle(path: str | None):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", newline=""), True


def _write_rows(path: str | None, header, rows) -> None:
    fh, close = _out_handle(path)
    try:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)
    finally:
        if close:
            fh.close()


def _read_series(path: str, column: str | None) -> np.ndarray:
    """Read a series from newline-delimited text or a CSV column."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SystemExit(f"error: cannot read {path}: {exc}") from None
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise SystemExit(f"error: no data in {path}")
    if column is None:
        try:
            return np.array([float(ln.split(",")[0]) for ln in lines])
        except ValueError as exc:
            raise SystemExit(
                f"error: {path} is not newline-delimited numbers ({exc}); "
                "use --column for CSV input"
            ) from None
    reader = csv.reader(lines)
    header = next(reader)
    if column.isdigit():
        idx = int(column)
        if idx >= len(header):
            raise SystemExit(f"error: column index {idx} out of range ({len(header)} columns)")
        # A pure index may point into a headerless file; keep the first row
        # if it parses as a number.
        rows = [header] if _is_number(header[idx]) else []
        rows += list(reader)
    else:
        if column not in header:
            raise SystemExit(f"error: column {column!r} not in header {header}")
        idx = header.index(column)
        rows = list(reader)
    try:
        return np.array([float(row[idx]) for row in rows if row])
    except (ValueError, IndexError) as exc:
        raise SystemExit(f"error: bad value in column {column!r} of {path}: {exc}") from None


def _is_number(token: str) -> bool:
    try:
        float(token)
    except ValueError:
        return False
    return True


def _cmd_tapers(args) -> int:
    if args.kind == "tukey":
        bank = tukey_taper(args.n, args.fraction)
    else:
        k = args.k if args.k is not None else default_taper_count(args.n)
        bank = sinusoidal_tapers(args.n, k)
    header = ["m"] + [f"nu_{k + 1}" for k in range(bank.k_count)]
    rows = [
        [m + 1] + [f"{bank.vectors[k, m]:.12g}" for k in range(bank.k_count)]
        for m in range(bank.n)
    ]
    _write_rows(args.output, header, rows)
    return 0


def _cmd_kernels(args) -> int:
    header = ["q", "p", "c0", "c1", "c2", "c3", "c4", "B_p", "norm_sq", "kappa0"]
    rows = []
    for q, p in sorted(_KERNEL_TABLE):
        ker = make_kernel(q, p)
        coeffs = list(ker.coefficients) + [0.0] * (5 - len(ker.coefficients))
        rows.append(
            [q, p]
            + [f"{c:.12g}" for c in coeffs]
            + [f"{ker.b_constant:.12g}", f"{ker.norm_sq:.12g}", f"{ker.at_zero:.12g}"]
        )
    _write_rows(args.output, header, rows)
    return 0


def _cmd_theory(args) -> int:
    n = args.n
    k = args.k if args.k is not None else default_taper_count(n)
    quartic = 3.0 * n / (2.0 * n + 2.0)
    rows = [
        ["N", n],
        ["K_default", default_taper_count(n)],
        ["K", k],
        ["M_0_2", f"{m_constant(0, 2):.10g}"],
        ["M_0_4", f"{m_constant(0, 4):.10g}"],
        ["M_2_4", f"{m_constant(2, 4):.10g}"],
        ["taper_quartic_sum_k1", f"{quartic:.10g}"],
        ["improvement_factor", f"{improvement_factor(quartic):.10g}"],
    ]
    for q, p in sorted(_KERNEL_TABLE):
        ker = make_kernel(q, p)
        rows.append([f"B_{q}_{p}", f"{ker.b_constant:.10g}"])
        rows.append([f"norm_sq_{q}_{p}", f"{ker.norm_sq:.10g}"])
    _write_rows(args.output, ["name", "value"], rows)
    return 0


def _cmd_generate(args) -> int:
    x = ma_generate(MA3_MODEL, args.n, args.seed, args.realization)
    fh, close = _out_handle(args.output)
    try:
        fh.write("\n".join(f"{v:.12g}" for v in x) + "\n")
    finally:
        if close:
            fh.close()
    return 0


def _config_from(args) -> EstimatorConfig:
    k_count = None if args.n_tapers == "auto" else int(args.n_tapers)
    return EstimatorConfig(
        k_count=k_count,
        reference=args.reference,
        tukey_fraction=args.tukey_fraction,
        seed=args.seed,
    )


def _cmd_estimate(args) -> int:
    x = _read_series(args.input, args.column)
    cfg = _config_from(args)
    grid = FrequencyGrid(x.size)
    half = grid.half_count

    if args.stage != "adaptive":
        tapers = sinusoidal_tapers(x.size, cfg.resolve_k(x.size))
        est = {
            "mt": lambda: log_multitaper(x, tapers),
            "st": lambda: single_taper_log(x),
            "meanlog": lambda: mean_log_single(x, tapers),
        }[args.stage]()
        rows = [
            [f"{grid.frequencies[j]:.8f}", f"{est.values[j]:.8f}"] for j in range(half)
        ]
        _write_rows(args.output, ["frequency", "value"], rows)
        return 0

    if args.fixed_h is not None:
        tapers = sinusoidal_tapers(x.size, cfg.resolve_k(x.size))
        theta = smooth(log_multitaper(x, tapers), make_kernel(0, 2), args.fixed_h)
        rows = [
            [f"{grid.frequencies[j]:.8f}", f"{theta.values[j]:.8f}", f"{args.fixed_h:.8f}", 0]
            for j in range(half)
        ]
        _write_rows(args.output, ["frequency", "log_spectrum", "halfwidth", "clamped"], rows)
        if args.plot:
            from .plotting import save_estimate_figure  # matplotlib import deferred
            from .bandwidth import BandwidthProfile
            from .pipeline import AdaptiveResult

            prof = BandwidthProfile(
                h04=args.fixed_h,
                h24=float("nan"),
                local=np.full(grid.size, args.fixed_h),
                cap_applied=np.zeros(grid.size, dtype=bool),
            )
            res = AdaptiveResult(theta=theta, profile=prof, fit=None, theta2=theta)
            save_estimate_figure(res, _fig_path(args.output))
        return 0

    result = estimate_log_spectrum(x, cfg)
    for note in result.warnings:
        print(f"note: {note}", file=sys.stderr)
    rows = [
        [
            f"{grid.frequencies[j]:.8f}",
            f"{result.theta.values[j]:.8f}",
            f"{result.profile.local[j]:.8f}",
            int(result.profile.cap_applied[j]),
        ]
        for j in range(half)
    ]
    _write_rows(args.output, ["frequency", "log_spectrum", "halfwidth", "clamped"], rows)

    if args.dump_asr:
        kernel04 = make_kernel(0, 4)
        fit = result.fit
        rows = [
            [
                f"{h:.8f}",
                f"{fit.a * v_of_h(kernel04, float(h), x.size) + fit.b * h**8:.8f}",
            ]
            for h in fit.h_grid
        ]
        # Re-evaluate the observed curve for the dump alongside the model.
        from .bandwidth import asr_curve

        if cfg.reference == "tukey":
            reference = single_taper_log(x, tukey_taper(x.size, cfg.tukey_fraction))
        else:
            reference = single_taper_log(x)
        k = cfg.resolve_k(x.size)
        smoothed_input = (
            reference if k == 1 else log_multitaper(x, sinusoidal_tapers(x.size, k))
        )
        curve = asr_curve(reference, smoothed_input, kernel04, fit.h_grid)
        rows = [
            [f"{h:.8f}", f"{curve.values[i]:.8f}", rows[i][1]]
            for i, h in enumerate(fit.h_grid)
        ]
        _write_rows(args.dump_asr, ["halfwidth", "asr", "fitted_model"], rows)
        if args.plot:
            from .plotting import save_asr_figure

            save_asr_figure(curve, fit, x.size, _fig_path(args.dump_asr))

    if args.plot:
        from .plotting import save_estimate_figure

        save_estimate_figure(result, _fig_path(args.output))
    return 0


def _fig_path(output: str | None) -> str:
    if output is None or output == "-":
        return "figure.png"
    return str(Path(output).with_suffix(".png"))


def _cmd_simulate(args) -> int:
    methods = tuple(int(tok) for tok in args.methods.split(","))
    cfg = _config_from(args)
    report = run_table1(
        args.n,
        args.realizations,
        args.seed,
        methods=methods,
        config=cfg,
        workers=args.workers,
    )
    write_report_csv(report, args.output)
    if args.per_realization:
        write_per_realization_csv(report, args.per_realization)
    if args.plot:
        from .plotting import save_simulation_figure

        save_simulation_figure(report, _fig_path(args.output))
    if report.failures:
        print(
            f"note: {len(report.failures)} realization(s) failed and were excluded",
            file=sys.stderr,
        )
    mise = report.mise
    for m in report.methods:
        print(
            f"method {m}: MISE {mise[m]:.4f}  MaxISE {report.max_ise[m]:.4f}",
            file=sys.stderr,
        )
    if set(methods) == {1, 2, 3} and report.completed >= 500 and not report.ordering_ok():
        print("error: MISE ordering violated (expect method 1 <= 2 < 3)", file=sys.stderr)
        return 2
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="logspec",
        description="Adaptive multitaper log-spectrum estimation",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tapers", help="dump a taper bank as CSV")
    p.add_argument("--n", type=int, required=True, help="record length")
    p.add_argument("--k", type=int, default=None, help="taper count (default: auto)")
    p.add_argument("--kind", choices=["sinusoidal", "tukey"], default="sinusoidal")
    p.add_argument("--fraction", type=float, default=0.2, help="Tukey cosine fraction")
    p.add_argument("--output", default=None, help="output CSV (default stdout)")
    p.set_defaults(func=_cmd_tapers)

    p = sub.add_parser("kernels", help="dump kernel constants as CSV")
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_kernels)

    p = sub.add_parser("theory", help="dump asymptotic constants as CSV")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_theory)

    p = sub.add_parser("generate", help="draw a reference-model realization")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--realization", type=int, default=0)
    p.add_argument("--output", default=None, help="output text file (default stdout)")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("estimate", help="estimate the log-spectrum of a series")
    p.add_argument("--input", required=True, help="series file (text or CSV)")
    p.add_argument("--column", default=None, help="CSV column name or index")
    p.add_argument("--output", default=None, help="output CSV (default stdout)")
    p.add_argument(
        "--stage",
        choices=["adaptive", "mt", "st", "meanlog"],
        default="adaptive",
        help="emit a raw estimator stage instead of the adaptive result",
    )
    p.add_argument("--n-tapers", default="auto", help="taper count K or 'auto'")
    p.add_argument(
        "--reference",
        choices=["sinusoidal", "tukey"],
        default="tukey",
        help="single-taper reference for halfwidth selection",
    )
    p.add_argument("--tukey-fraction", type=float, default=0.2)
    p.add_argument("--seed", type=int, default=None, help="recorded in the configuration")
    p.add_argument("--dump-asr", default=None, help="write the ASR curve and fit here")
    p.add_argument(
        "--fixed-h", type=float, default=None, help="skip adaptation; smooth at this halfwidth"
    )
    p.add_argument("--plot", action="store_true", help="render PNG figures beside outputs")
    p.set_defaults(func=_cmd_estimate)

    p = sub.add_parser("simulate", help="run the Monte Carlo estimator comparison")
    p.add_argument("--n", type=int, required=True, help="record length (e.g. 128 or 1024)")
    p.add_argument("--realizations", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", required=True, help="report CSV path")
    p.add_argument("--methods", default="1,2,3", help="comma-separated subset of 1,2,3")
    p.add_argument("--per-realization", default=None, help="per-realization ISE CSV path")
    p.add_argument("--n-tapers", default="auto")
    p.add_argument(
        "--reference", choices=["sinusoidal", "tukey"], default="tukey",
        help="single-taper reference for halfwidth selection",
    )
    p.add_argument("--tukey-fraction", type=float, default=0.2)
    p.add_argument("--workers", type=int, default=None, help="process count for realizations")
    p.add_argument("--plot", action="store_true", help="render a PNG summary beside the report")
    p.set_defaults(func=_cmd_simulate)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
