"""Double-slit far-field simulator: finite-pixel detection and polarization
decoherence both washing the fringes out to the same smooth curve."""

__version__ = "0.1.0"

from .optics import (ComplexField, ExperimentConfig, IntensityProfile,
                     PolarizationPair, analytic_intensity, double_slit_field,
                     envelope, fraunhofer_distance, fringe_period,
                     numeric_propagate, numeric_to_normalized, rect_ft)
from .detector import (AcquiredHistogram, DetectorArray, acquire, visibility,
                       read_histogram_csv, read_profile_csv,
                       write_histogram_csv, write_profile_csv)
from .coherence import (AnalyticCoherence, CoherencyMatrix, EnsembleCoherence,
                        coherency_from_ensemble, decohered_intensity,
                        ensemble_intensity)
from .runner import (EquivalenceReport, RunReport, Scenario,
                     run_coherence_sweep, run_equivalence_check,
                     run_wavelength_sweep)

__all__ = [
    "__version__",
    "ComplexField", "ExperimentConfig", "IntensityProfile", "PolarizationPair",
    "analytic_intensity", "double_slit_field", "envelope", "fraunhofer_distance",
    "fringe_period", "numeric_propagate", "numeric_to_normalized", "rect_ft",
    "AcquiredHistogram", "DetectorArray", "acquire", "visibility",
    "read_histogram_csv", "read_profile_csv", "write_histogram_csv",
    "write_profile_csv",
    "AnalyticCoherence", "CoherencyMatrix", "EnsembleCoherence",
    "coherency_from_ensemble", "decohered_intensity", "ensemble_intensity",
    "EquivalenceReport", "RunReport", "Scenario",
    "run_coherence_sweep", "run_equivalence_check", "run_wavelength_sweep",
]
