"""Closed-form number statistics for the two dual mode orderings.

A squeezed coherent mode B = cosh(r) a + e^{i phi} sinh(r) a^dag - alpha
and the bare photon mode a can each play the role of "counted quanta" and
"thermalized quanta":

* ``photons_in_squeezed_thermal``: photon statistics (a^dag a) in a thermal
  state of the B quanta.
* ``squeezed_in_photon_thermal``: B statistics (B^dag B) in a thermal state
  of the photons.

The two orderings map onto each other exactly under
:func:`transform_parameters` (alpha -> alpha cosh r - conj(alpha) e^{i phi}
sinh r, zeta -> -zeta), which the test suite exercises as an identity.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from enum import Enum

from .params import (
    CoherentAmplitude,
    DimensionlessTemperature,
    SqueezeParameter,
    thermal_mean,
)

# Past this squeeze magnitude cosh(4r) > ~1e17 and double precision can no
# longer resolve the thermal terms; results are still returned, with a warning.
LARGE_SQUEEZE_WARNING = 10.0


class PrecisionLossWarning(UserWarning):
    """Squeeze magnitude large enough that double precision degrades."""


class StateKind(Enum):
    """Which quanta are counted and which are thermalized."""

    PHOTONS_IN_SQUEEZED_THERMAL = "photons-in-squeezed-thermal"
    SQUEEZED_IN_PHOTON_THERMAL = "squeezed-in-thermal"


@dataclass(frozen=True)
class ModeParameters:
    """Full parameter set: squeeze, displacement, and temperature."""

    squeeze: SqueezeParameter
    coherent: CoherentAmplitude
    x: DimensionlessTemperature

    @classmethod
    def from_values(cls, r: float = 0.0, phi: float = 0.0, alpha_mag: float = 0.0,
                    alpha_phase: float = 0.0, x: float = 1.0) -> "ModeParameters":
        return cls(
            squeeze=SqueezeParameter(r, phi),
            coherent=CoherentAmplitude(alpha_mag, alpha_phase),
            x=DimensionlessTemperature(x),
        )

    @property
    def alpha(self) -> complex:
        return self.coherent.value


@dataclass(frozen=True)
class NumberStatistics:
    """A (mean, variance) pair for a number operator."""

    mean: float
    variance: float

    def __post_init__(self):
        if not (math.isfinite(self.mean) and math.isfinite(self.variance)):
            raise ValueError(f"statistics must be finite, got {self}")
        if self.mean < 0.0 or self.variance < 0.0:
            raise ValueError(f"mean and variance must be nonnegative, got {self}")


def _warn_if_imprecise(r: float) -> None:
    if r > LARGE_SQUEEZE_WARNING:
        warnings.warn(
            f"squeeze magnitude r={r:g} drives cosh(4r) past ~1e17; "
            "double precision cannot fully resolve the result",
            PrecisionLossWarning,
            stacklevel=3,
        )


def _mix(alpha: complex, phi: float, r: float, sign: float) -> complex:
    """alpha cosh(r) +/- conj(alpha) e^{i phi} sinh(r)."""
    return alpha * math.cosh(r) + sign * alpha.conjugate() * cmath.exp(1j * phi) * math.sinh(r)


def effective_amplitude(p: ModeParameters) -> complex:
    """Displacement as seen by the counted photons:
    alpha cosh(r) - conj(alpha) e^{i phi} sinh(r)."""
    return _mix(p.alpha, p.squeeze.phi, p.squeeze.r, -1.0)


def mean_photons_in_squeezed_thermal(p: ModeParameters) -> float:
    """Mean photon number cosh(2r) nbar + sinh^2(r) + |effective amplitude|^2."""
    r = p.squeeze.r
    _warn_if_imprecise(r)
    nbar = thermal_mean(p.x)
    out = math.sinh(r) ** 2 + abs(effective_amplitude(p)) ** 2
    if nbar > 0.0:
        out += math.cosh(2.0 * r) * nbar
    return out


def variance_photons_in_squeezed_thermal(p: ModeParameters) -> float:
    """Photon-number variance in a thermal state of the squeezed quanta.

    cosh(4r) nbar^2 + [cosh(4r) + 2|c|^2] nbar + sinh^2(2r)/2 + |c|^2
    with c = alpha cosh(2r) - conj(alpha) e^{i phi} sinh(2r). Note the
    doubled arguments inside the cross term relative to the mean.
    """
    r = p.squeeze.r
    _warn_if_imprecise(r)
    nbar = thermal_mean(p.x)
    c2 = abs(_mix(p.alpha, p.squeeze.phi, 2.0 * r, -1.0)) ** 2
    out = 0.5 * math.sinh(2.0 * r) ** 2 + c2
    if nbar > 0.0:
        out += math.cosh(4.0 * r) * nbar * nbar + (math.cosh(4.0 * r) + 2.0 * c2) * nbar
    return out


def mean_squeezed_in_photon_thermal(p: ModeParameters) -> float:
    """Mean of the squeezed-mode number operator in a photon thermal state:
    cosh(2r) nbar + sinh^2(r) + |alpha|^2. Exactly phase-independent."""
    r = p.squeeze.r
    _warn_if_imprecise(r)
    nbar = thermal_mean(p.x)
    out = math.sinh(r) ** 2 + p.coherent.mag ** 2
    if nbar > 0.0:
        out += math.cosh(2.0 * r) * nbar
    return out


def variance_squeezed_in_photon_thermal(p: ModeParameters) -> float:
    """Squeezed-mode number variance in a photon thermal state.

    cosh(4r) nbar^2 + [cosh(4r) + 2|c|^2] nbar + sinh^2(2r)/2 + |c|^2
    with c = alpha cosh(r) + conj(alpha) e^{i phi} sinh(r); single
    arguments and a plus sign, unlike the dual ordering.
    """
    r = p.squeeze.r
    _warn_if_imprecise(r)
    nbar = thermal_mean(p.x)
    c2 = abs(_mix(p.alpha, p.squeeze.phi, r, +1.0)) ** 2
    out = 0.5 * math.sinh(2.0 * r) ** 2 + c2
    if nbar > 0.0:
        out += math.cosh(4.0 * r) * nbar * nbar + (math.cosh(4.0 * r) + 2.0 * c2) * nbar
    return out


def transform_parameters(p: ModeParameters) -> ModeParameters:
    """Duality map (alpha, zeta) -> (alpha cosh r - conj(alpha) e^{i phi} sinh r, -zeta).

    Evaluating the squeezed-in-photon-thermal statistics at the transformed
    parameters reproduces the photons-in-squeezed-thermal statistics at the
    original ones, and vice versa.
    """
    return ModeParameters(
        squeeze=p.squeeze.negated(),
        coherent=CoherentAmplitude.from_complex(effective_amplitude(p)),
        x=p.x,
    )


def number_statistics(p: ModeParameters, which: StateKind) -> NumberStatistics:
    """Bundle mean and variance for the requested ordering."""
    if which is StateKind.PHOTONS_IN_SQUEEZED_THERMAL:
        return NumberStatistics(
            mean=mean_photons_in_squeezed_thermal(p),
            variance=variance_photons_in_squeezed_thermal(p),
        )
    if which is StateKind.SQUEEZED_IN_PHOTON_THERMAL:
        return NumberStatistics(
            mean=mean_squeezed_in_photon_thermal(p),
            variance=variance_squeezed_in_photon_thermal(p),
        )
    raise ValueError(f"unknown state kind: {which!r}")
