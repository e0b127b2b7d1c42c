"""Scenario orchestration: wavelength and coherence sweeps, the classical-limit
equivalence check, and the flat key = value config format. Each sweep point
writes a fine-grid profile CSV, an acquired histogram CSV, an envelope-histogram
CSV, and a rendered figure; the report CSV collects one record per point."""
from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from . import __version__
from .coherence import AnalyticCoherence, CoherenceSpec, EnsembleCoherence, decohered_intensity
from .detector import (AcquiredHistogram, DetectorArray, acquire, visibility,
                       write_histogram_csv, write_profile_csv)
from .optics import (ExperimentConfig, IntensityProfile, PolarizationPair,
                     analytic_intensity, envelope, fringe_period)

ENVELOPE_FLOOR = 1e-3      # bins with envelope below this fraction of peak are excluded
MIN_WINDOW_BINS = 4        # widen the visibility window until it holds this many bins
FINE_SAMPLES_PER_FEATURE = 32

DEFAULT_CONFIG = {
    "slit_width_mm": 1.0,
    "slit_sep_mm": 3.0,
    "ref_wavelength_nm": 800.0,
    "screen_distance_m": None,   # derived: 4 a^2 / lambda_ref
    "pixel_um": 65.0,
    "pixel_count": 370,
    "delta": None,
    "wavelengths_nm": None,
    "deltas": None,
    "mc_samples": None,
    "seed": 0,
}


@dataclass(frozen=True)
class Scenario:
    """One orchestrated run: geometry + detector + coherence + sweep values."""

    name: str
    experiment: ExperimentConfig
    detector: DetectorArray
    coherence: CoherenceSpec = field(default_factory=lambda: AnalyticCoherence(1.0))
    sweep: tuple[float, ...] = ()
    output_dir: str = "out"
    rescale_screen_per_wavelength: bool = False
    make_figures: bool = True

    def __post_init__(self):
        if not self.name or any(ch in self.name for ch in "/\\ \t\n"):
            raise ValueError(f"scenario name must be nonempty and filesystem-safe: {self.name!r}")


@dataclass(frozen=True)
class SweepRecord:
    param: float
    visibility: float
    profile_path: str
    histogram_path: str
    envelope_path: str
    figure_path: str | None


@dataclass(frozen=True)
class RunReport:
    records: tuple[SweepRecord, ...]
    seed: int
    config_hash: str
    version: str
    report_path: str


@dataclass(frozen=True)
class EquivalenceReport:
    max_relative_deviation: float
    threshold: float

    @property
    def passed(self) -> bool:
        return self.max_relative_deviation <= self.threshold


# ---------------------------------------------------------------------------
# config parsing

def parse_config_text(text: str) -> dict:
    """Parse the flat `key = value` format (# comments, SI-suffixed keys)."""
    cfg = dict(DEFAULT_CONFIG)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"config line {lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key not in cfg:
            raise ValueError(f"config line {lineno}: unknown key {key!r}")
        if key in ("wavelengths_nm", "deltas"):
            cfg[key] = tuple(float(v) for v in value.split(",") if v.strip())
        elif key in ("pixel_count", "mc_samples", "seed"):
            cfg[key] = int(value)
        else:
            cfg[key] = float(value)
    return cfg


def parse_config_file(path) -> dict:
    return parse_config_text(Path(path).read_text())


def config_hash(cfg: dict) -> str:
    canon = "\n".join(f"{k}={cfg[k]!r}" for k in sorted(cfg))
    return hashlib.sha256(canon.encode()).hexdigest()[:16]


def experiment_from_config(cfg: dict) -> ExperimentConfig:
    a = cfg["slit_width_mm"] * 1e-3
    b = cfg["slit_sep_mm"] * 1e-3
    lam = cfg["ref_wavelength_nm"] * 1e-9
    L = cfg["screen_distance_m"]
    if L is None:
        L = 4.0 * a**2 / lam
    return ExperimentConfig(slit_width=a, slit_separation=b, wavelength=lam,
                            screen_distance=L)


def detector_from_config(cfg: dict) -> DetectorArray:
    return DetectorArray(pixel_count=cfg["pixel_count"],
                         pixel_width=cfg["pixel_um"] * 1e-6)


def scenario_from_config(cfg: dict, name: str, kind: str = "wavelength",
                         output_dir: str = "out", rescale_screen: bool = False,
                         make_figures: bool = True) -> Scenario:
    """Build a Scenario from a parsed config dict.

    kind selects what Scenario.sweep holds: "wavelength" -> the wavelength
    list in meters, "coherence" -> the delta list, "point" -> a single point
    (delta if the config sets one, else the single configured wavelength).
    """
    experiment = experiment_from_config(cfg)
    det = detector_from_config(cfg)
    if cfg.get("delta") is not None:
        coh: CoherenceSpec = AnalyticCoherence(cfg["delta"])
    elif cfg.get("mc_samples"):
        coh = EnsembleCoherence(sample_count=cfg["mc_samples"], seed=cfg["seed"])
    else:
        coh = AnalyticCoherence(1.0)
    if kind == "wavelength":
        sweep = (tuple(v * 1e-9 for v in cfg["wavelengths_nm"])
                 if cfg.get("wavelengths_nm") else (experiment.wavelength,))
    elif kind == "coherence":
        if cfg.get("deltas"):
            sweep = tuple(cfg["deltas"])
        elif cfg.get("delta") is not None:
            sweep = (cfg["delta"],)
        else:
            sweep = tuple(round(0.1 * i, 1) for i in range(11))
    elif kind == "point":
        if cfg.get("delta") is not None:
            sweep = (cfg["delta"],)
        elif cfg.get("wavelengths_nm"):
            sweep = (cfg["wavelengths_nm"][0] * 1e-9,)
        else:
            sweep = (experiment.wavelength,)
    else:
        raise ValueError(f"unknown scenario kind {kind!r}")
    return Scenario(name=name, experiment=experiment, detector=det, coherence=coh,
                    sweep=sweep, output_dir=output_dir,
                    rescale_screen_per_wavelength=rescale_screen,
                    make_figures=make_figures)


# ---------------------------------------------------------------------------
# shared machinery

def fine_grid(cfg: ExperimentConfig, det: DetectorArray) -> np.ndarray:
    """Uniform grid over the detector span resolving both the fringe period
    and the pixel width (>= 32 samples per finer feature)."""
    lam_period = fringe_period(cfg)
    feature = min(lam_period, det.pixel_width)
    dx = feature / FINE_SAMPLES_PER_FEATURE
    half = det.total_span / 2.0 + det.pixel_width
    n = int(math.ceil(2.0 * half / dx)) + 1
    return np.linspace(det.center_offset - half, det.center_offset + half, n)


def visibility_window(cfg: ExperimentConfig, det: DetectorArray) -> tuple[float, float]:
    """Window of +/- one fringe period around the pattern center, widened to
    +/- 2 pixel widths whenever it would hold fewer than 4 bins."""
    half = fringe_period(cfg)
    centers = det.centers
    if np.count_nonzero(np.abs(centers) <= half) < MIN_WINDOW_BINS:
        half = 2.0 * det.pixel_width
    return (-half, half)


def envelope_histogram(cfg: ExperimentConfig, det: DetectorArray) -> AcquiredHistogram:
    """Pixel-averaged pure single-slit envelope (the incoherent reference curve)."""
    return acquire(lambda x: envelope(x, cfg), det, min_feature=fringe_period(cfg))


def central_lobe_halfwidth(cfg: ExperimentConfig) -> float:
    """Distance lambda L / a from the pattern center to the first envelope zero."""
    return cfg.wavelength * cfg.screen_distance / cfg.slit_width


def _normalization_mask(env_hist: AcquiredHistogram, lobe: float) -> np.ndarray:
    # ratio bins are meaningful only where the envelope reference is away from
    # its zeros; bins straddling or beyond the first zero are excluded
    env = env_hist.bin_values
    inside = np.abs(env_hist.bin_centers) + env_hist.bin_width / 2.0 <= lobe
    return inside & (env >= ENVELOPE_FLOOR * float(np.max(env)))


def envelope_normalized(hist: AcquiredHistogram, env_hist: AcquiredHistogram,
                        lobe: float) -> tuple[np.ndarray, np.ndarray]:
    """Bins of `hist` divided by the envelope bins, restricted to the central
    envelope lobe; returns (centers, normalized values)."""
    mask = _normalization_mask(env_hist, lobe)
    return hist.bin_centers[mask], hist.bin_values[mask] / env_hist.bin_values[mask]


def detected_visibility(hist: AcquiredHistogram, env_hist: AcquiredHistogram,
                        window: tuple[float, float], lobe: float = math.inf) -> float:
    """Fringe visibility of the envelope-compensated histogram over `window`.

    Dividing out the pixel-averaged envelope isolates the fringe contrast from
    the envelope's own fall-off, so a fringe-free pattern reads V = 0 however
    fast the envelope decays. When every usable bin carries the same value
    (fringes fully unresolved) the contrast is 0.
    """
    centers, values = envelope_normalized(hist, env_hist, lobe)
    norm = AcquiredHistogram(bin_centers=centers, bin_values=values,
                             bin_width=hist.bin_width)
    return visibility(norm, window)


def _sweep_point_outputs(out: Path, tag: str, profile: IntensityProfile,
                         hist: AcquiredHistogram, env_hist: AcquiredHistogram,
                         make_figure: bool, title: str) -> tuple[str, str, str, str | None]:
    profile_path = out / f"profile_{tag}.csv"
    hist_path = out / f"histogram_{tag}.csv"
    env_path = out / f"histogram_{tag}_envelope.csv"
    write_profile_csv(profile, profile_path)
    write_histogram_csv(hist, hist_path)
    write_histogram_csv(env_hist, env_path)
    fig_path = None
    if make_figure:
        from .plots import render_sweep_point
        fig_path = out / f"figure_{tag}.png"
        render_sweep_point(profile, hist, fig_path, title=title)
    return (str(profile_path), str(hist_path), str(env_path),
            str(fig_path) if fig_path else None)


def _write_report(out: Path, scenario: Scenario, records: list[SweepRecord],
                  cfg_hash: str, seed: int, param_name: str) -> RunReport:
    report_path = out / f"report_{scenario.name}.csv"
    lines = ["param,visibility,profile_path,histogram_path"]
    for r in records:
        lines.append(f"{r.param:.10e},{r.visibility:.10e},{r.profile_path},{r.histogram_path}")
    report_path.write_text("\n".join(lines) + "\n")
    prov_path = out / f"provenance_{scenario.name}.txt"
    prov_path.write_text(
        f"scenario = {scenario.name}\n"
        f"sweep_parameter = {param_name}\n"
        f"seed = {seed}\n"
        f"config_hash = {cfg_hash}\n"
        f"tool_version = {__version__}\n"
    )
    return RunReport(records=tuple(records), seed=seed, config_hash=cfg_hash,
                     version=__version__, report_path=str(report_path))


def _scenario_hash(scenario: Scenario) -> str:
    canon = repr((scenario.name, scenario.experiment, scenario.detector,
                  scenario.coherence, scenario.sweep,
                  scenario.rescale_screen_per_wavelength))
    return hashlib.sha256(canon.encode()).hexdigest()[:16]


# ---------------------------------------------------------------------------
# sweeps

def run_wavelength_sweep(scenario: Scenario) -> RunReport:
    """Acquire the coherent two-slit pattern through the fixed detector for each
    wavelength in the sweep; the screen distance stays at the scenario value
    unless rescale_screen_per_wavelength is set."""
    out = Path(scenario.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    det = scenario.detector
    records: list[SweepRecord] = []
    wavelengths = scenario.sweep or (scenario.experiment.wavelength,)
    pol = PolarizationPair.parallel()
    for lam in wavelengths:
        cfg = replace(scenario.experiment, wavelength=lam)
        if scenario.rescale_screen_per_wavelength:
            cfg = replace(cfg, screen_distance=4.0 * cfg.slit_width**2 / lam)
        try:
            grid = fine_grid(cfg, det)
            profile = IntensityProfile(x_grid=grid, values=analytic_intensity(grid, cfg, pol))
            hist = acquire(lambda x: analytic_intensity(x, cfg, pol), det,
                           min_feature=fringe_period(cfg))
            env_hist = envelope_histogram(cfg, det)
            vis = detected_visibility(hist, env_hist, visibility_window(cfg, det),
                                      lobe=central_lobe_halfwidth(cfg))
        except ValueError as exc:
            raise ValueError(f"wavelength sweep point {lam * 1e9:g} nm: {exc}") from exc
        tag = f"lambda_{lam * 1e9:g}nm"
        paths = _sweep_point_outputs(out, tag, profile, hist, env_hist,
                                     scenario.make_figures,
                                     title=f"wavelength = {lam * 1e9:g} nm, V = {vis:.3f}")
        records.append(SweepRecord(lam, vis, *paths))
    return _write_report(out, scenario, records, _scenario_hash(scenario),
                         seed=_scenario_seed(scenario), param_name="wavelength_m")


def run_coherence_sweep(scenario: Scenario, deltas: tuple[float, ...] | None = None) -> RunReport:
    """Acquire the partially coherent pattern at the reference wavelength for
    each degree of coherence in the sweep."""
    out = Path(scenario.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    det = scenario.detector
    cfg = scenario.experiment
    if deltas is None:
        if isinstance(scenario.coherence, AnalyticCoherence):
            deltas = scenario.sweep or (scenario.coherence.delta,)
        else:
            deltas = scenario.sweep
    if not deltas:
        raise ValueError("coherence sweep needs at least one delta value")
    records: list[SweepRecord] = []
    env_hist = envelope_histogram(cfg, det)
    grid = fine_grid(cfg, det)
    for delta in deltas:
        try:
            profile = IntensityProfile(x_grid=grid,
                                       values=decohered_intensity(grid, cfg, delta))
            hist = acquire(lambda x: decohered_intensity(x, cfg, delta), det,
                           min_feature=fringe_period(cfg))
            vis = detected_visibility(hist, env_hist, visibility_window(cfg, det),
                                      lobe=central_lobe_halfwidth(cfg))
        except ValueError as exc:
            raise ValueError(f"coherence sweep point delta={delta:g}: {exc}") from exc
        tag = f"delta_{delta:g}".replace(".", "p")
        paths = _sweep_point_outputs(out, tag, profile, hist, env_hist,
                                     scenario.make_figures,
                                     title=f"delta = {delta:g}, V = {vis:.3f}")
        records.append(SweepRecord(delta, vis, *paths))
    return _write_report(out, scenario, records, _scenario_hash(scenario),
                         seed=_scenario_seed(scenario), param_name="delta")


def _scenario_seed(scenario: Scenario) -> int:
    return scenario.coherence.seed if isinstance(scenario.coherence, EnsembleCoherence) else 0


def classical_point_histogram(
        scenario: Scenario) -> tuple[AcquiredHistogram, AcquiredHistogram, ExperimentConfig]:
    """Acquired histogram, envelope histogram, and effective geometry for a
    single-point scenario: a fixed-delta pattern if the scenario is a coherence
    one, else the coherent pattern at the scenario's (single) wavelength."""
    det = scenario.detector
    if isinstance(scenario.coherence, AnalyticCoherence) and scenario.coherence.delta != 1.0:
        cfg = scenario.experiment
        delta = scenario.coherence.delta
        hist = acquire(lambda x: decohered_intensity(x, cfg, delta), det,
                       min_feature=fringe_period(cfg))
    else:
        lam = scenario.sweep[0] if scenario.sweep else scenario.experiment.wavelength
        cfg = replace(scenario.experiment, wavelength=lam)
        pol = PolarizationPair.parallel()
        hist = acquire(lambda x: analytic_intensity(x, cfg, pol), det,
                       min_feature=fringe_period(cfg))
    return hist, envelope_histogram(cfg, det), cfg


def run_equivalence_check(scenario_a: Scenario, scenario_b: Scenario,
                          threshold: float = 5e-2) -> EquivalenceReport:
    """Compare the two scenarios' envelope-normalized acquired histograms.

    Both classical limits (unresolvably fine fringes, zero coherence) must
    leave the same fringe-free curve; the check reports the max pointwise
    relative deviation of the normalized histograms and passes when it is
    within `threshold`.
    """
    if (scenario_a.detector.pixel_count != scenario_b.detector.pixel_count
            or scenario_a.detector.pixel_width != scenario_b.detector.pixel_width
            or scenario_a.detector.center_offset != scenario_b.detector.center_offset):
        raise ValueError("equivalence check requires identical detector geometry")
    hist_a, env_a, cfg_a = classical_point_histogram(scenario_a)
    hist_b, env_b, cfg_b = classical_point_histogram(scenario_b)
    mask = (_normalization_mask(env_a, central_lobe_halfwidth(cfg_a))
            & _normalization_mask(env_b, central_lobe_halfwidth(cfg_b)))
    na = hist_a.bin_values[mask] / env_a.bin_values[mask]
    nb = hist_b.bin_values[mask] / env_b.bin_values[mask]
    dev = float(np.max(np.abs(na - nb) / np.maximum(np.abs(nb), 1e-12)))
    return EquivalenceReport(max_relative_deviation=dev, threshold=threshold)
