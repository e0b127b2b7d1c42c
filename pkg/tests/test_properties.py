"""Standalone property suites: averaging bounds, signal conservation,
energy conservation of the propagator, exact visibility-coherence law,
symmetry/periodicity of the closed form, and bitwise seed determinism."""
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fringe_lab import (AnalyticCoherence, DetectorArray, EnsembleCoherence,
                        ExperimentConfig, PolarizationPair, acquire,
                        analytic_intensity, decohered_intensity,
                        ensemble_intensity, fringe_period, numeric_propagate,
                        visibility)
from fringe_lab.coherence import coherency_from_ensemble
from fringe_lab.detector import AcquiredHistogram
from fringe_lab.optics import ComplexField


@pytest.fixture
def cfg():
    return ExperimentConfig(1e-3, 3e-3, 800e-9, 5.0)


trig_coeffs = st.lists(st.tuples(st.floats(-1, 1), st.floats(0.5, 20.0),
                                 st.floats(0, 2 * math.pi)),
                       min_size=1, max_size=4)


def trig_poly(coeffs):
    # strictly positive smooth test intensity
    def f(x):
        total = np.full_like(np.asarray(x, dtype=float), 5.0)
        for amp, freq, phase in coeffs:
            total = total + amp * np.cos(freq * x + phase)
        return total
    return f


@settings(max_examples=40, deadline=None)
@given(coeffs=trig_coeffs, width=st.floats(0.05, 1.0), offset=st.floats(-0.5, 0.5))
def test_averaging_bounds(coeffs, width, offset):
    f = trig_poly(coeffs)
    det = DetectorArray(7, width, center_offset=offset)
    hist = acquire(f, det, samples_per_pixel=64)
    for k in range(det.pixel_count):
        xs = np.linspace(det.edges[k], det.edges[k + 1], 501)
        vals = f(xs)
        assert vals.min() - 1e-9 <= hist.bin_values[k] <= vals.max() + 1e-9


@settings(max_examples=40, deadline=None)
@given(coeffs=trig_coeffs, width=st.floats(0.05, 1.0))
def test_signal_conservation(coeffs, width):
    f = trig_poly(coeffs)
    n_sub = 64
    det = DetectorArray(9, width)
    hist = acquire(f, det, samples_per_pixel=n_sub)
    total = float(np.sum(hist.bin_values)) * det.pixel_width
    xs = np.linspace(det.edges[0], det.edges[-1], det.pixel_count * n_sub + 1)
    assert total == pytest.approx(float(np.trapezoid(f(xs), xs)), rel=1e-6)


def test_parseval_smooth_aperture(cfg):
    # the propagator is a scaled Fourier transform: the output norm times
    # lambda*L equals the aperture norm; a Gaussian keeps truncation negligible
    sigma = 0.2e-3
    xi = np.linspace(-1.5e-3, 1.5e-3, 4001)
    amp = np.zeros((2, xi.size), complex)
    amp[0] = np.exp(-xi**2 / (2 * sigma**2))
    amp[1] = 0.5j * np.exp(-xi**2 / (2 * sigma**2))
    field = ComplexField(xi, amp)
    energy_in = float(np.trapezoid(field.intensity(), xi))
    x = np.linspace(-40e-3, 40e-3, 20001)
    out = numeric_propagate(field, cfg, x)
    energy_out = float(np.trapezoid(out.intensity(), x)) \
        * cfg.wavelength * cfg.screen_distance
    assert energy_out == pytest.approx(energy_in, rel=1e-4)


def test_parseval_slit_aperture_truncation_limited(cfg):
    # hard-edged slits spread energy into slow sinc^2 tails; over ~10 envelope
    # lobes per side the captured fraction is only good to the tail integral
    from fringe_lab import double_slit_field
    field = double_slit_field(cfg, PolarizationPair.parallel(), samples_per_slit=256)
    energy_in = float(np.trapezoid(field.intensity(), field.x_grid))
    lobe = cfg.wavelength * cfg.screen_distance / cfg.slit_width
    x = np.linspace(-10 * lobe, 10 * lobe, 30001)
    out = numeric_propagate(field, cfg, x)
    energy_out = float(np.trapezoid(out.intensity(), x)) \
        * cfg.wavelength * cfg.screen_distance
    assert energy_out == pytest.approx(energy_in, rel=2e-2)


@settings(max_examples=30, deadline=None)
@given(delta=st.floats(0.0, 1.0))
def test_visibility_equals_coherence_for_pure_fringe(delta):
    # envelope set to 1: bins sampled at quarter-period centers hit the exact
    # extrema, so the measured contrast equals delta to machine precision
    period = 1.0
    centers = np.arange(-8, 9) * period / 4.0
    values = 1.0 + delta * np.cos(2 * math.pi * centers / period)
    hist = AcquiredHistogram(centers, np.maximum(values, 0.0), period / 4.0)
    v = visibility(hist, (-period, period))
    assert v == pytest.approx(delta, abs=5e-16)


@settings(max_examples=25, deadline=None)
@given(values=st.lists(st.floats(0.0, 1e6), min_size=2, max_size=30))
def test_visibility_range(values):
    hist = AcquiredHistogram(np.arange(len(values), dtype=float),
                             np.array(values), 1.0)
    v = visibility(hist, (-1.0, float(len(values))))
    assert 0.0 <= v <= 1.0


@settings(max_examples=30, deadline=None)
@given(a_mm=st.floats(0.1, 2.0), b_over_a=st.floats(1.5, 5.0),
       lam_nm=st.floats(20, 2000), x=st.floats(0, 20e-3))
def test_intensity_symmetry(a_mm, b_over_a, lam_nm, x):
    cfg = ExperimentConfig(a_mm * 1e-3, b_over_a * a_mm * 1e-3, lam_nm * 1e-9, 5.0)
    pol = PolarizationPair.parallel()
    assert analytic_intensity(x, cfg, pol) == analytic_intensity(-x, cfg, pol)


def test_fringe_periodicity_machine_precision(cfg):
    period = fringe_period(cfg)
    k, b, L = cfg.wavenumber, cfg.slit_separation, cfg.screen_distance
    # argument shift over one period is exactly 2 pi
    assert k * b * period / L == pytest.approx(2 * math.pi, rel=1e-14)


def test_seed_determinism_bitwise(cfg):
    x = np.linspace(-12e-3, 12e-3, 2001)
    spec = EnsembleCoherence(sample_count=10_000, seed=20260826)
    a = ensemble_intensity(x, cfg, spec)
    b = ensemble_intensity(x, cfg, spec)
    np.testing.assert_array_equal(a.values, b.values)
    assert coherency_from_ensemble(spec).j12 == coherency_from_ensemble(spec).j12


def test_decohered_bounds(cfg):
    x = np.linspace(-12e-3, 12e-3, 4001)
    for delta in (0.0, 0.3, 1.0):
        vals = decohered_intensity(x, cfg, delta)
        assert np.all(vals >= 0)
        assert np.all(vals <= 2.0 + 1e-12)
