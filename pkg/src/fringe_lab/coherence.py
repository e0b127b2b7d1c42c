"""Partial polarization coherence between the two slits.

The degree of coherence delta = <cos(theta1 - theta2)> scales the fringe
term of the screen intensity. Two routes are provided: the closed form at a
fixed delta, and a seeded Monte-Carlo ensemble over random polarizer angles
whose estimated coherence must converge to the closed form.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .optics import ExperimentConfig, IntensityProfile, envelope, fringe_phase

INVERSE_CDF_TABLE_SIZE = 2**14


@dataclass(frozen=True)
class AnalyticCoherence:
    """Fixed degree of coherence delta in [0, 1]."""

    delta: float

    def __post_init__(self):
        if not (0.0 <= self.delta <= 1.0):
            raise ValueError(f"delta must lie in [0, 1], got {self.delta!r}")


@dataclass(frozen=True)
class EnsembleCoherence:
    """Random-polarizer ensemble: angles drawn over [0, 2 pi).

    distribution   "uniform" or a density callable rho(theta) on [0, 2 pi)
                   (sampled by inverse CDF on a fixed table)
    joint_offset   if set, theta2 = theta1 + joint_offset instead of an
                   independent draw
    sample_count   number of experiment realizations M
    seed           64-bit seed; fixes every draw
    """

    sample_count: int
    seed: int
    distribution: str | Callable[[np.ndarray], np.ndarray] = "uniform"
    joint_offset: float | None = None

    def __post_init__(self):
        if self.sample_count < 1:
            raise ValueError(f"sample_count must be >= 1, got {self.sample_count}")


CoherenceSpec = AnalyticCoherence | EnsembleCoherence


@dataclass(frozen=True)
class CoherencyMatrix:
    """2x2 Hermitian correlation matrix of the two slit polarizations.

    Only the independent entries are stored; j21 = conj(j12).
    """

    j11: float
    j22: float
    j12: complex

    def __post_init__(self):
        if self.j11 < 0 or self.j22 < 0:
            raise ValueError("diagonal entries must be nonnegative")

    @property
    def j21(self) -> complex:
        return np.conj(self.j12)

    @property
    def trace(self) -> float:
        return self.j11 + self.j22

    @property
    def determinant(self) -> float:
        return self.j11 * self.j22 - abs(self.j12) ** 2

    @property
    def degree_of_coherence(self) -> float:
        """Normalized off-diagonal j12 / sqrt(j11 j22) (real part)."""
        return float(np.real(self.j12)) / math.sqrt(self.j11 * self.j22)


def _sample_one(dist, rng: np.random.Generator, m: int) -> np.ndarray:
    if isinstance(dist, str):
        if dist != "uniform":
            raise ValueError(f"unknown distribution {dist!r}")
        return rng.uniform(0.0, 2.0 * math.pi, size=m)
    # inverse-CDF sampling of a user density on a fixed table
    grid = np.linspace(0.0, 2.0 * math.pi, INVERSE_CDF_TABLE_SIZE)
    rho = np.asarray(dist(grid), dtype=float)
    if np.any(rho < 0):
        raise ValueError("density must be nonnegative")
    cdf = np.concatenate([[0.0], np.cumsum((rho[1:] + rho[:-1]) / 2.0 * np.diff(grid))])
    if cdf[-1] <= 0:
        raise ValueError("density integrates to zero")
    cdf /= cdf[-1]
    u = rng.uniform(0.0, 1.0, size=m)
    return np.interp(u, cdf, grid)


def sample_angles(spec: EnsembleCoherence) -> tuple[np.ndarray, np.ndarray]:
    """Draw the M (theta1, theta2) pairs of the ensemble; deterministic per seed."""
    rng = np.random.default_rng(spec.seed)
    theta1 = _sample_one(spec.distribution, rng, spec.sample_count)
    if spec.joint_offset is not None:
        theta2 = theta1 + spec.joint_offset
    else:
        theta2 = _sample_one(spec.distribution, rng, spec.sample_count)
    return theta1, theta2


def coherency_from_ensemble(spec: EnsembleCoherence) -> CoherencyMatrix:
    """Estimate the coherency matrix from the seeded angle ensemble.

    Unit-amplitude slit fields give j11 = j22 = 1 and
    j12 = mean over samples of cos(theta1 - theta2).
    """
    theta1, theta2 = sample_angles(spec)
    j12 = float(np.mean(np.cos(theta1 - theta2)))
    return CoherencyMatrix(j11=1.0, j22=1.0, j12=complex(j12))


def decohered_intensity(x, cfg: ExperimentConfig, delta: float):
    """Screen intensity at degree of coherence delta (same units as analytic_intensity).

    I(x) = sinc^2(k a x / 2L) * [1 + delta cos(k b x / L)]
    """
    if not (0.0 <= delta <= 1.0):
        raise ValueError(f"delta must lie in [0, 1], got {delta!r}")
    return envelope(x, cfg) * (1.0 + delta * np.cos(fringe_phase(x, cfg)))


def ensemble_intensity(x_grid, cfg: ExperimentConfig,
                       spec: EnsembleCoherence) -> IntensityProfile:
    """Mean screen intensity over the angle ensemble.

    Each realization contributes envelope * (1 + cos(dtheta_m) cos(k b x / L));
    the x dependence factors out of the mean, so the result equals the
    closed form evaluated at the sample-mean coherence (to the last bit).
    """
    x_grid = np.asarray(x_grid, dtype=float)
    theta1, theta2 = sample_angles(spec)
    j12 = float(np.mean(np.cos(theta1 - theta2)))
    values = envelope(x_grid, cfg) * (1.0 + j12 * np.cos(fringe_phase(x_grid, cfg)))
    return IntensityProfile(x_grid=x_grid, values=np.maximum(values, 0.0))
