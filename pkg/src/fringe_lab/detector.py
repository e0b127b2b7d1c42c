"""Finite-pixel detection: a 1-D array of contiguous square pixels that
averages the incident intensity over each pixel, plus the fringe-visibility
contrast metric and CSV serialization for acquired histograms."""
from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .optics import IntensityProfile

MIN_SAMPLES_PER_PIXEL = 16
SUBSAMPLES_PER_FEATURE = 32


@dataclass(frozen=True)
class DetectorArray:
    """N contiguous pixels of width pixel_width, geometrically centered at center_offset.

    Pixel k spans [x0 + k*w, x0 + (k+1)*w) with x0 = center_offset - N*w/2,
    so an even N puts a pixel edge at the array center and an odd N a pixel
    center there.
    """

    pixel_count: int
    pixel_width: float
    center_offset: float = 0.0

    def __post_init__(self):
        if self.pixel_count < 1:
            raise ValueError(f"pixel_count must be >= 1, got {self.pixel_count}")
        if not self.pixel_width > 0:
            raise ValueError(f"pixel_width must be positive, got {self.pixel_width}")

    @property
    def total_span(self) -> float:
        return self.pixel_count * self.pixel_width

    @property
    def edges(self) -> np.ndarray:
        x0 = self.center_offset - self.total_span / 2.0
        return x0 + self.pixel_width * np.arange(self.pixel_count + 1)

    @property
    def centers(self) -> np.ndarray:
        return self.edges[:-1] + self.pixel_width / 2.0


@dataclass(frozen=True)
class AcquiredHistogram:
    """Per-pixel averaged intensities."""

    bin_centers: np.ndarray
    bin_values: np.ndarray
    bin_width: float

    def __post_init__(self):
        c = np.asarray(self.bin_centers, dtype=float)
        v = np.asarray(self.bin_values, dtype=float)
        if c.ndim != 1 or v.shape != c.shape:
            raise ValueError("bin_centers and bin_values must be 1-D arrays of equal length")
        if np.any(v < 0):
            raise ValueError("bin values must be nonnegative")
        object.__setattr__(self, "bin_centers", c)
        object.__setattr__(self, "bin_values", v)


def acquire(intensity, det: DetectorArray, samples_per_pixel: int = MIN_SAMPLES_PER_PIXEL,
            min_feature: float | None = None) -> AcquiredHistogram:
    """Average the intensity over each pixel (trapezoid on a per-pixel subgrid).

    `intensity` is either a callable I(x) or an IntensityProfile sampled with
    at least 16 points per pixel over the full detector span. `min_feature`
    (e.g. the fringe period) bumps the subgrid so oscillations finer than a
    pixel stay resolved.
    """
    edges = det.edges
    if isinstance(intensity, IntensityProfile):
        prof = intensity
        if prof.x_grid[0] > edges[0] or prof.x_grid[-1] < edges[-1]:
            raise ValueError(
                f"intensity profile spans [{prof.x_grid[0]:g}, {prof.x_grid[-1]:g}] m "
                f"but the detector needs [{edges[0]:g}, {edges[-1]:g}] m"
            )
        max_dx = float(np.max(np.diff(prof.x_grid)))
        have = det.pixel_width / max_dx
        if have < MIN_SAMPLES_PER_PIXEL:
            raise ValueError(
                f"intensity profile too coarse: {have:.1f} samples per pixel, "
                f"need >= {MIN_SAMPLES_PER_PIXEL}"
            )
        func = prof
    elif callable(intensity):
        func = intensity
    else:
        raise TypeError("intensity must be callable or an IntensityProfile")

    n_sub = max(int(samples_per_pixel), MIN_SAMPLES_PER_PIXEL)
    if min_feature is not None and min_feature > 0:
        n_sub = max(n_sub, int(math.ceil(SUBSAMPLES_PER_FEATURE * det.pixel_width / min_feature)))
    frac = np.linspace(0.0, 1.0, n_sub + 1)
    sub = edges[:-1, None] + det.pixel_width * frac[None, :]  # (N, n_sub+1)
    vals = np.asarray(func(sub.ravel()), dtype=float).reshape(sub.shape)
    means = np.trapezoid(vals, dx=det.pixel_width / n_sub, axis=1) / det.pixel_width
    # trapezoid of a nonnegative integrand is nonnegative; clip rounding dust
    means = np.maximum(means, 0.0)
    return AcquiredHistogram(bin_centers=det.centers, bin_values=means,
                             bin_width=det.pixel_width)


def visibility(hist: AcquiredHistogram, window: tuple[float, float]) -> float:
    """Fringe contrast (I_max - I_min)/(I_max + I_min) over bins whose centers
    lie inside `window`; 0 when the window is uniformly dark."""
    lo, hi = window
    if not hi > lo:
        raise ValueError(f"empty visibility window ({lo!r}, {hi!r})")
    mask = (hist.bin_centers >= lo) & (hist.bin_centers <= hi)
    if np.count_nonzero(mask) < 2:
        raise ValueError("visibility window must contain at least 2 bins")
    vals = hist.bin_values[mask]
    i_max, i_min = float(np.max(vals)), float(np.min(vals))
    if i_max == 0.0:
        return 0.0
    return (i_max - i_min) / (i_max + i_min)


HISTOGRAM_HEADER = "bin_center_m,bin_width_m,intensity"
PROFILE_HEADER = "x_m,intensity"


def write_histogram_csv(hist: AcquiredHistogram, path) -> None:
    lines = [HISTOGRAM_HEADER]
    for c, v in zip(hist.bin_centers, hist.bin_values):
        lines.append(f"{c:.10e},{hist.bin_width:.10e},{v:.10e}")
    Path(path).write_text("\n".join(lines) + "\n")


def read_histogram_csv(path) -> AcquiredHistogram:
    lines = Path(path).read_text().strip().splitlines()
    if not lines or lines[0].strip() != HISTOGRAM_HEADER:
        raise ValueError(f"{path}: not a histogram CSV (bad header)")
    rows = [tuple(float(f) for f in ln.split(",")) for ln in lines[1:]]
    centers = np.array([r[0] for r in rows])
    values = np.array([r[2] for r in rows])
    return AcquiredHistogram(bin_centers=centers, bin_values=values,
                             bin_width=rows[0][1] if rows else 0.0)


def write_profile_csv(profile: IntensityProfile, path) -> None:
    lines = [PROFILE_HEADER]
    for x, v in zip(profile.x_grid, profile.values):
        lines.append(f"{x:.10e},{v:.10e}")
    Path(path).write_text("\n".join(lines) + "\n")


def read_profile_csv(path) -> IntensityProfile:
    lines = Path(path).read_text().strip().splitlines()
    if not lines or lines[0].strip() != PROFILE_HEADER:
        raise ValueError(f"{path}: not a profile CSV (bad header)")
    rows = [tuple(float(f) for f in ln.split(",")) for ln in lines[1:]]
    return IntensityProfile(x_grid=np.array([r[0] for r in rows]),
                            values=np.array([r[1] for r in rows]))
