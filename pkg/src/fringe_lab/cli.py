"""Command-line entry point.

    fringe-lab wavelength-sweep --config cfg.txt [--out DIR]
    fringe-lab coherence-sweep  --config cfg.txt [--out DIR]
    fringe-lab equivalence      --config-a a.txt --config-b b.txt
    fringe-lab oracle           --config cfg.txt

Exit codes: 0 success, 1 validation error, 2 acceptance-check failure.
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

from .optics import (PolarizationPair, analytic_intensity, double_slit_field,
                     fringe_period, numeric_propagate, numeric_to_normalized)
from .runner import (DEFAULT_CONFIG, experiment_from_config, parse_config_file,
                     run_coherence_sweep, run_equivalence_check,
                     run_wavelength_sweep, scenario_from_config)

ORACLE_TOLERANCE = 1e-4


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", default="out", help="output directory (default: out)")
    p.add_argument("--wavelength-nm", type=float, default=None,
                   help="override: run a single wavelength (nm)")
    p.add_argument("--delta", type=float, default=None,
                   help="override: degree of coherence in [0, 1]")
    p.add_argument("--seed", type=int, default=None, help="override: ensemble seed")
    p.add_argument("--no-figures", action="store_true", help="skip PNG rendering")


def _load_config(path, args) -> dict:
    cfg = parse_config_file(path) if path else dict(DEFAULT_CONFIG)
    if getattr(args, "wavelength_nm", None) is not None:
        cfg["wavelengths_nm"] = (args.wavelength_nm,)
    if getattr(args, "delta", None) is not None:
        cfg["delta"] = args.delta
    if getattr(args, "seed", None) is not None:
        cfg["seed"] = args.seed
    return cfg


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fringe-lab",
                                     description="Two-slit far-field simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("wavelength-sweep",
                       help="acquire the coherent pattern across a wavelength list")
    p.add_argument("--config", default=None, help="config file (key = value lines)")
    p.add_argument("--rescale-L-per-lambda", action="store_true",
                   help="recompute the screen distance 4a^2/lambda at each sweep point")
    _add_common(p)

    p = sub.add_parser("coherence-sweep",
                       help="acquire the partially coherent pattern across a delta list")
    p.add_argument("--config", default=None)
    _add_common(p)

    p = sub.add_parser("equivalence",
                       help="compare two scenarios' envelope-normalized histograms")
    p.add_argument("--config-a", required=True)
    p.add_argument("--config-b", required=True)
    p.add_argument("--threshold", type=float, default=5e-2)

    p = sub.add_parser("oracle",
                       help="check quadrature propagation against the closed form")
    p.add_argument("--config", default=None)
    p.add_argument("--aperture-samples", type=int, default=10_000,
                   help="total aperture samples across both slits")
    _add_common(p)
    return parser


def _cmd_wavelength_sweep(args) -> int:
    cfg = _load_config(args.config, args)
    scenario = scenario_from_config(cfg, name="wavelength_sweep", kind="wavelength",
                                    output_dir=args.out,
                                    rescale_screen=args.rescale_L_per_lambda,
                                    make_figures=not args.no_figures)
    report = run_wavelength_sweep(scenario)
    for rec in report.records:
        print(f"lambda = {rec.param * 1e9:8.1f} nm   V = {rec.visibility:.4f}")
    print(f"report: {report.report_path}")
    return 0


def _cmd_coherence_sweep(args) -> int:
    cfg = _load_config(args.config, args)
    scenario = scenario_from_config(cfg, name="coherence_sweep", kind="coherence",
                                    output_dir=args.out,
                                    make_figures=not args.no_figures)
    report = run_coherence_sweep(scenario)
    for rec in report.records:
        print(f"delta = {rec.param:5.2f}   V = {rec.visibility:.4f}")
    print(f"report: {report.report_path}")
    return 0


def _cmd_equivalence(args) -> int:
    cfg_a = parse_config_file(args.config_a)
    cfg_b = parse_config_file(args.config_b)
    sc_a = scenario_from_config(cfg_a, name="equivalence_a", kind="point",
                                make_figures=False)
    sc_b = scenario_from_config(cfg_b, name="equivalence_b", kind="point",
                                make_figures=False)
    report = run_equivalence_check(sc_a, sc_b, threshold=args.threshold)
    status = "PASS" if report.passed else "FAIL"
    print(f"max relative deviation = {report.max_relative_deviation:.4e} "
          f"(threshold {report.threshold:g}): {status}")
    return 0 if report.passed else 2


def _cmd_oracle(args) -> int:
    cfg_dict = _load_config(args.config, args)
    cfg = experiment_from_config(cfg_dict)
    if cfg_dict.get("wavelengths_nm"):
        from dataclasses import replace
        cfg = replace(cfg, wavelength=cfg_dict["wavelengths_nm"][0] * 1e-9)
    pol = PolarizationPair.parallel()
    per_slit = max(64, round(args.aperture_samples * cfg.slit_width
                             / (cfg.slit_width + cfg.slit_separation)))
    aperture = double_slit_field(cfg, pol, samples_per_slit=per_slit)
    half = 3.0 * fringe_period(cfg) * cfg.slit_separation / cfg.slit_width  # ~3 envelope lobes
    x_out = np.linspace(-half, half, 4001)
    numeric = numeric_to_normalized(numeric_propagate(aperture, cfg, x_out).intensity(), cfg)
    reference = analytic_intensity(x_out, cfg, pol)
    mask = reference > 1e-3 * float(np.max(reference))
    err = float(np.max(np.abs(numeric[mask] - reference[mask]) / reference[mask]))
    status = "PASS" if err <= ORACLE_TOLERANCE else "FAIL"
    print(f"max relative error (intensity > 1e-3 of peak) = {err:.3e} "
          f"(tolerance {ORACLE_TOLERANCE:g}): {status}")
    return 0 if err <= ORACLE_TOLERANCE else 2


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        "wavelength-sweep": _cmd_wavelength_sweep,
        "coherence-sweep": _cmd_coherence_sweep,
        "equivalence": _cmd_equivalence,
        "oracle": _cmd_oracle,
    }
    try:
        return handlers[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
