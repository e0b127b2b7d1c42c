"""Far-field double-slit optics.

Closed-form screen intensity for a two-slit aperture in the far-field
(Fraunhofer) regime, plus a direct-quadrature propagator used as an
independent cross-check of the closed form.

Units are SI throughout. Intensities are emitted in normalized units where
the fully coherent central maximum equals 2 (overall proportionality
constants are dropped).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


def sinc(u):
    """sin(u)/u with the continuous extension sinc(0) = 1."""
    # np.sinc is the normalized sin(pi x)/(pi x)
    return np.sinc(np.asarray(u, dtype=float) / np.pi)


def rect(t):
    """Indicator of [-1/2, 1/2]: 1 inside, 0 outside, 1/2 on the edge.

    The half-value edge convention makes trapezoid quadrature across the jump
    second-order accurate when a sample lands on a slit edge; edge detection
    is tolerant to grid-construction rounding.
    """
    t = np.abs(np.asarray(t, dtype=float))
    out = np.where(t < 0.5, 1.0, 0.0)
    return np.where(np.abs(t - 0.5) <= 1e-9, 0.5, out)


@dataclass(frozen=True)
class ExperimentConfig:
    """Geometry of the two-slit setup.

    slit_width       width of each slit (m)
    slit_separation  center-to-center slit distance (m), must exceed slit_width
    wavelength       illumination wavelength (m)
    screen_distance  slit-plane to screen distance (m)
    """

    slit_width: float
    slit_separation: float
    wavelength: float
    screen_distance: float

    def __post_init__(self):
        for name in ("slit_width", "slit_separation", "wavelength", "screen_distance"):
            v = getattr(self, name)
            if not (v > 0 and math.isfinite(v)):
                raise ValueError(f"{name} must be positive and finite, got {v!r}")
        if self.slit_separation <= self.slit_width:
            raise ValueError(
                "slit_separation must exceed slit_width (non-overlapping slits): "
                f"{self.slit_separation!r} <= {self.slit_width!r}"
            )

    @property
    def wavenumber(self) -> float:
        return 2.0 * math.pi / self.wavelength

    @property
    def in_far_field(self) -> bool:
        """True if the screen sits beyond the far-field validity distance."""
        return self.screen_distance >= fraunhofer_distance(self)


@dataclass(frozen=True)
class PolarizationPair:
    """Polarizer angles (radians, in the transverse plane) for the two slits."""

    theta1: float
    theta2: float

    @property
    def p1(self) -> np.ndarray:
        return np.array([math.cos(self.theta1), math.sin(self.theta1)])

    @property
    def p2(self) -> np.ndarray:
        return np.array([math.cos(self.theta2), math.sin(self.theta2)])

    @property
    def dot(self) -> float:
        """Scalar product of the two unit polarization vectors."""
        return math.cos(self.theta1 - self.theta2)

    @classmethod
    def parallel(cls) -> "PolarizationPair":
        return cls(0.0, 0.0)

    @classmethod
    def orthogonal(cls) -> "PolarizationPair":
        return cls(0.0, math.pi / 2.0)


@dataclass(frozen=True)
class IntensityProfile:
    """Sampled transverse intensity: strictly increasing grid, nonnegative values."""

    x_grid: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x_grid, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if x.ndim != 1 or v.shape != x.shape:
            raise ValueError("x_grid and values must be 1-D arrays of equal length")
        if x.size >= 2 and not np.all(np.diff(x) > 0):
            raise ValueError("x_grid must be strictly increasing")
        if np.any(v < 0):
            raise ValueError("intensity values must be nonnegative")
        object.__setattr__(self, "x_grid", x)
        object.__setattr__(self, "values", v)

    def __call__(self, x):
        return np.interp(x, self.x_grid, self.values)


@dataclass(frozen=True)
class ComplexField:
    """Complex field samples: amplitudes[c, i] is transverse component c at x_grid[i]."""

    x_grid: np.ndarray
    amplitudes: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x_grid, dtype=float)
        a = np.asarray(self.amplitudes, dtype=complex)
        if x.ndim != 1:
            raise ValueError("x_grid must be 1-D")
        if a.shape != (2, x.size):
            raise ValueError(f"amplitudes must have shape (2, {x.size}), got {a.shape}")
        if x.size >= 2 and not np.all(np.diff(x) > 0):
            raise ValueError("x_grid must be strictly increasing")
        object.__setattr__(self, "x_grid", x)
        object.__setattr__(self, "amplitudes", a)

    def intensity(self) -> np.ndarray:
        return np.sum(np.abs(self.amplitudes) ** 2, axis=0)


def fraunhofer_distance(cfg: ExperimentConfig) -> float:
    """Minimum screen distance 4 a^2 / lambda for far-field validity."""
    return 4.0 * cfg.slit_width**2 / cfg.wavelength


def fringe_period(cfg: ExperimentConfig) -> float:
    """Spatial period lambda L / b of the two-slit interference cosine."""
    return cfg.wavelength * cfg.screen_distance / cfg.slit_separation


def rect_ft(t0: float, a: float, tau) -> np.ndarray:
    """Fourier transform of rect((t - t0)/a): (|a|/sqrt(2 pi)) e^{i t0 tau} sinc(a tau / 2)."""
    if a == 0:
        raise ValueError("rect width must be nonzero")
    tau = np.asarray(tau, dtype=float)
    return (abs(a) / math.sqrt(2.0 * math.pi)) * np.exp(1j * t0 * tau) * sinc(a * tau / 2.0)


def envelope(x, cfg: ExperimentConfig):
    """Single-slit diffraction envelope sinc^2(k a x / (2 L)), unit peak."""
    u = cfg.wavenumber * cfg.slit_width * np.asarray(x, dtype=float) / (2.0 * cfg.screen_distance)
    return sinc(u) ** 2


def fringe_phase(x, cfg: ExperimentConfig):
    """Argument k b x / L of the interference cosine."""
    return cfg.wavenumber * cfg.slit_separation * np.asarray(x, dtype=float) / cfg.screen_distance


def analytic_intensity(x, cfg: ExperimentConfig, pol: PolarizationPair | None = None):
    """Closed-form far-field two-slit intensity (central coherent maximum = 2).

    I(x) = sinc^2(k a x / 2L) * [1 + (p1.p2) cos(k b x / L)]
    """
    dot = 1.0 if pol is None else pol.dot
    return envelope(x, cfg) * (1.0 + dot * np.cos(fringe_phase(x, cfg)))


def double_slit_field(cfg: ExperimentConfig, pol: PolarizationPair | None = None,
                      samples_per_slit: int = 64) -> ComplexField:
    """Sampled aperture-plane field of the two slits with unit amplitude.

    The grid is uniform with spacing slit_width / samples_per_slit, extending
    one step beyond the outer slit edges so the whole aperture is covered.
    """
    if samples_per_slit < 2:
        raise ValueError("samples_per_slit must be >= 2")
    if pol is None:
        pol = PolarizationPair.parallel()
    a, b = cfg.slit_width, cfg.slit_separation
    h = a / samples_per_slit
    half = (b + a) / 2.0 + h
    n = int(round(2.0 * half / h)) + 1
    x = np.linspace(-half, half, n)
    t1 = rect((x - b / 2.0) / a)
    t2 = rect((x + b / 2.0) / a)
    amps = np.outer(pol.p1, t1).astype(complex) + np.outer(pol.p2, t2).astype(complex)
    return ComplexField(x_grid=x, amplitudes=amps)


def numeric_propagate(aperture_field: ComplexField, cfg: ExperimentConfig,
                      x_out, chunk: int = 256) -> ComplexField:
    """Far-field propagation by direct trapezoid quadrature of the diffraction integral.

    E(x) = e^{i k (L + x^2/2L)} / (i lambda L) * integral E_in(xi) e^{-i k x xi / L} d(xi)

    per transverse component. The aperture sampling must keep the kernel phase
    step below pi/4 for every output point.
    """
    x_out = np.atleast_1d(np.asarray(x_out, dtype=float))
    if x_out.size >= 2 and not np.all(np.diff(x_out) > 0):
        raise ValueError("x_out must be strictly increasing")
    xi = aperture_field.x_grid
    if xi.size < 2:
        raise ValueError("aperture field needs at least 2 samples")
    k = cfg.wavenumber
    L = cfg.screen_distance
    worst_step = float(np.max(np.diff(xi)) * k * np.max(np.abs(x_out)) / L)
    if worst_step >= math.pi / 4.0:
        raise ValueError(
            "aperture sampling too coarse: worst kernel phase step "
            f"{worst_step:.3f} rad >= pi/4; refine the aperture grid"
        )
    prefactor = np.exp(1j * k * (L + x_out**2 / (2.0 * L))) / (1j * cfg.wavelength * L)
    out = np.empty((2, x_out.size), dtype=complex)
    for start in range(0, x_out.size, chunk):
        sl = slice(start, min(start + chunk, x_out.size))
        kernel = np.exp(-1j * (k / L) * np.outer(x_out[sl], xi))  # (m, n)
        for c in range(2):
            out[c, sl] = np.trapezoid(kernel * aperture_field.amplitudes[c], xi, axis=1)
    out *= prefactor
    return ComplexField(x_grid=x_out, amplitudes=out)


def numeric_to_normalized(intensity: np.ndarray, cfg: ExperimentConfig) -> np.ndarray:
    """Rescale |E|^2 from numeric_propagate into the normalized units of
    analytic_intensity (coherent central maximum = 2), for unit-amplitude slits."""
    scale = (cfg.wavelength * cfg.screen_distance) ** 2 / (2.0 * cfg.slit_width**2)
    return intensity * scale
