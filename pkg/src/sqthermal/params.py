"""Parameter types and the thermal-mode baseline statistics.

Temperature enters every formula in this package only through the
dimensionless combination x = hbar*omega / (k_B * T), so the types here
store that ratio directly; :meth:`DimensionlessTemperature.from_physical`
converts from (kelvin, rad/s) using CODATA values. Squeeze and coherent
amplitudes are kept in polar form with phases normalized to [0, 2*pi).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

TWO_PI = 2.0 * math.pi

# CODATA 2018 (h and k_B are exact; hbar = h / 2*pi to double precision).
REDUCED_PLANCK = 1.054571817e-34  # J s
BOLTZMANN = 1.380649e-23  # J / K

# Above this x the occupation 1/(e^x - 1) underflows to < 1e-300, and
# exp(x) itself is close to overflowing; treat the mode as frozen out.
VACUUM_CUTOFF_X = 700.0


def normalize_phase(phase: float) -> float:
    """Map an angle in radians into [0, 2*pi).

    Idempotent bit-for-bit: a value already in range is returned unchanged.
    """
    phase = float(phase)
    if not math.isfinite(phase):
        raise ValueError(f"phase must be finite, got {phase!r}")
    wrapped = math.fmod(phase, TWO_PI)
    if wrapped < 0.0:
        wrapped += TWO_PI
    if wrapped >= TWO_PI:  # rounding in += can land exactly on 2*pi
        wrapped = 0.0
    return wrapped


def phase_distance(a: float, b: float) -> float:
    """Circular distance between two angles, in [0, pi]."""
    d = math.fmod(abs(float(a) - float(b)), TWO_PI)
    return min(d, TWO_PI - d)


def _positive_finite(value: float, name: str) -> float:
    value = float(value)
    if not math.isfinite(value) or value <= 0.0:
        raise ValueError(f"{name} must be a positive finite number, got {value!r}")
    return value


@dataclass(frozen=True)
class SqueezeParameter:
    """Polar form of the squeeze parameter zeta = r * exp(i*phi).

    r is the nonnegative magnitude; phi is normalized to [0, 2*pi) at
    construction.
    """

    r: float
    phi: float = 0.0

    def __post_init__(self):
        r = float(self.r)
        if not math.isfinite(r) or r < 0.0:
            raise ValueError(f"squeeze magnitude r must be finite and >= 0, got {self.r!r}")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "phi", normalize_phase(self.phi))

    @property
    def zeta(self) -> complex:
        return self.r * cmath.exp(1j * self.phi)

    def negated(self) -> "SqueezeParameter":
        """zeta -> -zeta, keeping r >= 0 by advancing the phase by pi."""
        return SqueezeParameter(self.r, self.phi + math.pi)


@dataclass(frozen=True)
class CoherentAmplitude:
    """Polar form of a coherent displacement alpha = mag * exp(i*theta)."""

    mag: float
    theta: float = 0.0

    def __post_init__(self):
        mag = float(self.mag)
        if not math.isfinite(mag) or mag < 0.0:
            raise ValueError(f"coherent magnitude must be finite and >= 0, got {self.mag!r}")
        object.__setattr__(self, "mag", mag)
        object.__setattr__(self, "theta", normalize_phase(self.theta))

    @property
    def value(self) -> complex:
        return self.mag * cmath.exp(1j * self.theta)

    @classmethod
    def from_complex(cls, z: complex) -> "CoherentAmplitude":
        z = complex(z)
        if z == 0:
            return cls(0.0, 0.0)
        return cls(abs(z), cmath.phase(z))


@dataclass(frozen=True)
class BogoliubovCoefficients:
    """Mode-mixing pair (beta, gamma) with |beta|^2 - |gamma|^2 = 1."""

    beta: complex
    gamma: complex


def coefficients_from_squeeze(z: SqueezeParameter) -> BogoliubovCoefficients:
    """Mixing coefficients beta = cosh(r), gamma = e^{i*phi} sinh(r)."""
    return BogoliubovCoefficients(
        beta=complex(math.cosh(z.r)),
        gamma=cmath.exp(1j * z.phi) * math.sinh(z.r),
    )


@dataclass(frozen=True)
class DimensionlessTemperature:
    """The ratio x = hbar*omega / (k_B * T); strictly positive."""

    x: float

    def __post_init__(self):
        object.__setattr__(self, "x", _positive_finite(self.x, "x"))

    @classmethod
    def from_physical(cls, temperature_kelvin: float, omega_rad_s: float) -> "DimensionlessTemperature":
        """Build from a temperature in kelvin and a mode frequency in rad/s."""
        t = _positive_finite(temperature_kelvin, "temperature_kelvin")
        w = _positive_finite(omega_rad_s, "omega_rad_s")
        return cls(REDUCED_PLANCK * w / (BOLTZMANN * t))

    def temperature_kelvin(self, omega_rad_s: float) -> float:
        """Invert :meth:`from_physical` for a given mode frequency."""
        w = _positive_finite(omega_rad_s, "omega_rad_s")
        return REDUCED_PLANCK * w / (BOLTZMANN * self.x)


def _as_x(x) -> float:
    """Coerce a DimensionlessTemperature or bare number to a validated float."""
    if isinstance(x, DimensionlessTemperature):
        return x.x
    return _positive_finite(x, "x")


def thermal_mean(x) -> float:
    """Mean occupation 1/(e^x - 1) of a thermal mode.

    Accepts a :class:`DimensionlessTemperature` or a positive float. Uses
    expm1 so small x does not lose precision; for x beyond the vacuum
    cutoff the occupation has underflowed and 0.0 is returned.
    """
    xv = _as_x(x)
    if xv > VACUUM_CUTOFF_X:
        return 0.0
    return 1.0 / math.expm1(xv)


def thermal_variance(x) -> float:
    """Number variance nbar*(nbar + 1) of a thermal mode."""
    nbar = thermal_mean(x)
    return nbar * (nbar + 1.0)
