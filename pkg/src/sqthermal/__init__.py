"""Photon statistics of squeezed coherent light in thermal states.

Closed-form mean and number variance for the two dual orderings (photons
counted in a thermal state of squeezed coherent quanta, and vice versa),
a delta-atom spectral decomposition of the occupation with chemical
potentials and an equilibrium temperature, and a brute-force truncated
Fock-space oracle that every closed form is verified against.
"""

from .closed_form import (
    ModeParameters,
    NumberStatistics,
    PrecisionLossWarning,
    StateKind,
    effective_amplitude,
    mean_photons_in_squeezed_thermal,
    mean_squeezed_in_photon_thermal,
    number_statistics,
    transform_parameters,
    variance_photons_in_squeezed_thermal,
    variance_squeezed_in_photon_thermal,
)
from .fock import (
    ConvergenceError,
    DensityMatrix,
    FockSpace,
    ModeOperator,
    TruncationReport,
    b_operator,
    b_operator_conjugated,
    build_fock_space,
    converge_statistics,
    displacement_operator,
    leading_block,
    oracle_statistics,
    squeeze_operator,
    squeezed_thermal_density,
    thermal_density,
)
from .matexp import backend_name, expm
from .params import (
    BogoliubovCoefficients,
    CoherentAmplitude,
    DimensionlessTemperature,
    SqueezeParameter,
    coefficients_from_squeeze,
    normalize_phase,
    phase_distance,
    thermal_mean,
    thermal_variance,
)
from .spectral import (
    INFINITE_TEMP,
    FiniteTemp,
    InfiniteTemp,
    SpectralAtom,
    SpectralFunction,
    equilibrium_temperature,
    evaluate_representation,
    normalization_integral,
    spectral_for_photons_in_squeezed_thermal,
    spectral_for_squeezed_in_photon_thermal,
)
from .verify import verification_grid, verify_point, verify_points

__version__ = "0.1.0"

__all__ = [
    "BogoliubovCoefficients",
    "CoherentAmplitude",
    "ConvergenceError",
    "DensityMatrix",
    "DimensionlessTemperature",
    "FiniteTemp",
    "FockSpace",
    "INFINITE_TEMP",
    "InfiniteTemp",
    "ModeOperator",
    "ModeParameters",
    "NumberStatistics",
    "PrecisionLossWarning",
    "SpectralAtom",
    "SpectralFunction",
    "SqueezeParameter",
    "StateKind",
    "TruncationReport",
    "b_operator",
    "b_operator_conjugated",
    "backend_name",
    "build_fock_space",
    "coefficients_from_squeeze",
    "converge_statistics",
    "displacement_operator",
    "effective_amplitude",
    "equilibrium_temperature",
    "evaluate_representation",
    "expm",
    "leading_block",
    "mean_photons_in_squeezed_thermal",
    "mean_squeezed_in_photon_thermal",
    "normalization_integral",
    "normalize_phase",
    "number_statistics",
    "oracle_statistics",
    "phase_distance",
    "spectral_for_photons_in_squeezed_thermal",
    "spectral_for_squeezed_in_photon_thermal",
    "squeeze_operator",
    "squeezed_thermal_density",
    "thermal_density",
    "thermal_mean",
    "thermal_variance",
    "transform_parameters",
    "variance_photons_in_squeezed_thermal",
    "variance_squeezed_in_photon_thermal",
    "verification_grid",
    "verify_point",
    "verify_points",
]
