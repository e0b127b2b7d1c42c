import math

import numpy as np
import pytest

from fringe_lab import (ExperimentConfig, PolarizationPair, analytic_intensity,
                        double_slit_field, envelope, fraunhofer_distance,
                        fringe_period, numeric_propagate, numeric_to_normalized,
                        rect_ft)
from fringe_lab.optics import ComplexField, IntensityProfile, rect, sinc


@pytest.fixture
def cfg():
    return ExperimentConfig(slit_width=1e-3, slit_separation=3e-3,
                            wavelength=800e-9, screen_distance=5.0)


class TestExperimentConfig:
    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            ExperimentConfig(-1e-3, 3e-3, 800e-9, 5.0)
        with pytest.raises(ValueError):
            ExperimentConfig(1e-3, 3e-3, 0.0, 5.0)

    def test_rejects_overlapping_slits(self):
        with pytest.raises(ValueError):
            ExperimentConfig(3e-3, 1e-3, 800e-9, 5.0)

    def test_far_field_flag(self, cfg):
        assert cfg.in_far_field
        near = ExperimentConfig(1e-3, 3e-3, 800e-9, 1.0)
        assert not near.in_far_field


class TestFraunhoferDistance:
    def test_reference(self, cfg):
        # 4 * (1e-3)^2 / 800e-9
        assert fraunhofer_distance(cfg) == pytest.approx(5.0, rel=1e-12)

    def test_short_wavelength(self):
        cfg = ExperimentConfig(1e-3, 3e-3, 100e-9, 40.0)
        assert fraunhofer_distance(cfg) == pytest.approx(40.0, rel=1e-12)

    def test_quadratic_in_slit_width(self):
        cfg = ExperimentConfig(2e-3, 6e-3, 800e-9, 20.0)
        assert fraunhofer_distance(cfg) == pytest.approx(20.0, rel=1e-12)


class TestFringePeriod:
    def test_reference(self, cfg):
        assert fringe_period(cfg) == pytest.approx(800e-9 * 5.0 / 3e-3, rel=1e-12)
        assert fringe_period(cfg) == pytest.approx(1.3333333333e-3, rel=1e-9)

    def test_short_wavelength(self, cfg):
        c = ExperimentConfig(1e-3, 3e-3, 20e-9, 5.0)
        assert fringe_period(c) == pytest.approx(33.3333333333e-6, rel=1e-9)

    def test_inverse_in_separation(self, cfg):
        halved = ExperimentConfig(1e-3, 1.5e-3, 800e-9, 5.0)
        assert fringe_period(halved) == pytest.approx(2 * fringe_period(cfg), rel=1e-12)


class TestRectFt:
    def test_zero_frequency(self):
        a = 2.5
        assert rect_ft(0.0, a, 0.0) == pytest.approx(a / math.sqrt(2 * math.pi))

    def test_first_zero(self):
        a = 2.5
        assert abs(rect_ft(0.0, a, 2 * math.pi / a)) == pytest.approx(0.0, abs=1e-15)

    def test_shift_is_pure_phase(self):
        a, tau, s = 1.7, 3.1, 0.42
        shifted = rect_ft(s, a, tau)
        base = rect_ft(0.0, a, tau)
        assert shifted == pytest.approx(np.exp(1j * s * tau) * base)

    def test_zero_width_rejected(self):
        with pytest.raises(ValueError):
            rect_ft(0.0, 0.0, 1.0)


class TestAnalyticIntensity:
    def test_central_maximum(self, cfg):
        assert analytic_intensity(0.0, cfg, PolarizationPair.parallel()) == pytest.approx(2.0)

    def test_orthogonal_is_pure_envelope(self, cfg):
        x = np.linspace(-10e-3, 10e-3, 501)
        got = analytic_intensity(x, cfg, PolarizationPair.orthogonal())
        np.testing.assert_allclose(got, envelope(x, cfg), rtol=0, atol=1e-15)

    def test_first_dark_fringe(self, cfg):
        x = fringe_period(cfg) / 2
        assert analytic_intensity(x, cfg, PolarizationPair.parallel()) == \
            pytest.approx(0.0, abs=1e-12)

    def test_even_in_x(self, cfg):
        x = np.linspace(1e-6, 12e-3, 777)
        pol = PolarizationPair.parallel()
        np.testing.assert_array_equal(analytic_intensity(x, cfg, pol),
                                      analytic_intensity(-x[::-1], cfg, pol)[::-1])

    def test_fringe_periodicity(self, cfg):
        period = fringe_period(cfg)
        x = np.linspace(-5e-3, 5e-3, 101)
        k, b, L = cfg.wavenumber, cfg.slit_separation, cfg.screen_distance
        np.testing.assert_allclose(np.cos(k * b * (x + period) / L),
                                   np.cos(k * b * x / L), atol=1e-9)


class TestNumericPropagate:
    def test_zero_field_propagates_to_zero(self, cfg):
        xi = np.linspace(-2e-3, 2e-3, 256)
        f = ComplexField(xi, np.zeros((2, xi.size), complex))
        out = numeric_propagate(f, cfg, np.linspace(-5e-3, 5e-3, 64))
        np.testing.assert_array_equal(out.intensity(), 0.0)

    def test_matches_closed_form(self, cfg):
        # quadrature route vs closed form, tight region around the center
        ap = double_slit_field(cfg, PolarizationPair.parallel(), samples_per_slit=4000)
        x = np.linspace(-3e-3, 3e-3, 601)
        num = numeric_to_normalized(numeric_propagate(ap, cfg, x).intensity(), cfg)
        ref = analytic_intensity(x, cfg, PolarizationPair.parallel())
        mask = ref > 0.25 * ref.max()
        np.testing.assert_allclose(num[mask], ref[mask], rtol=1e-6)

    def test_single_slit_is_sinc_squared(self, cfg):
        a = cfg.slit_width
        h = a / 2000
        xi = np.linspace(-a / 2 - h, a / 2 + h, 2003)
        amp = np.zeros((2, xi.size), complex)
        amp[0] = rect(xi / a)
        x = np.linspace(-3e-3, 3e-3, 301)
        got = numeric_propagate(ComplexField(xi, amp), cfg, x).intensity()
        k, L, lam = cfg.wavenumber, cfg.screen_distance, cfg.wavelength
        ref = (a / (lam * L)) ** 2 * sinc(k * a * x / (2 * L)) ** 2
        mask = ref > 1e-2 * ref.max()
        np.testing.assert_allclose(got[mask], ref[mask], rtol=2e-6)

    def test_linearity(self, cfg):
        rng = np.random.default_rng(7)
        xi = np.linspace(-2e-3, 2e-3, 512)
        x = np.linspace(-4e-3, 4e-3, 65)
        f = ComplexField(xi, rng.normal(size=(2, xi.size))
                         + 1j * rng.normal(size=(2, xi.size)))
        g = ComplexField(xi, rng.normal(size=(2, xi.size))
                         + 1j * rng.normal(size=(2, xi.size)))
        alpha, beta = 1.3 - 0.2j, -0.7 + 2.1j
        combo = ComplexField(xi, alpha * f.amplitudes + beta * g.amplitudes)
        lhs = numeric_propagate(combo, cfg, x).amplitudes
        rhs = (alpha * numeric_propagate(f, cfg, x).amplitudes
               + beta * numeric_propagate(g, cfg, x).amplitudes)
        np.testing.assert_allclose(lhs, rhs, rtol=1e-12, atol=1e-12)

    def test_sampling_contract_violation_names_phase_step(self, cfg):
        xi = np.linspace(-2e-3, 2e-3, 8)  # far too coarse for 50 mm off axis
        f = ComplexField(xi, np.ones((2, xi.size), complex))
        with pytest.raises(ValueError, match="phase step"):
            numeric_propagate(f, cfg, np.array([50e-3]))

    def test_mismatched_grid_rejected(self, cfg):
        xi = np.linspace(-1e-3, 1e-3, 16)
        with pytest.raises(ValueError):
            ComplexField(xi, np.ones((2, 15), complex))


class TestProfileAndField:
    def test_profile_rejects_negative(self):
        with pytest.raises(ValueError):
            IntensityProfile(np.array([0.0, 1.0]), np.array([1.0, -0.1]))

    def test_profile_rejects_unsorted(self):
        with pytest.raises(ValueError):
            IntensityProfile(np.array([1.0, 0.0]), np.array([1.0, 1.0]))
