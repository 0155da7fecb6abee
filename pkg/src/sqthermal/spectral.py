"""Delta-atom spectral decomposition of the mean occupation.

The mean occupation of either ordering can be written as a mixture of
Bose-Einstein factors over an auxiliary temperature T' and a chemical
potential mu:

    n = sum_atoms  weight / (e^mu * e^{x T/T'} - 1)

For the states handled here the mixture is purely atomic: a blackbody atom
at T' = T with mu = 0 and weight cosh(2r), plus - whenever squeezing or
displacement is present - one infinite-temperature atom of unit weight
whose chemical potential encodes the non-thermal occupation. Atoms are
delta distributions and stay symbolic; nothing is mollified onto a grid.

Auxiliary temperatures are stored as the dimensionless ratio T'/T so that
the representation can be evaluated from x alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .closed_form import ModeParameters, effective_amplitude
from .params import _as_x, thermal_mean


@dataclass(frozen=True)
class FiniteTemp:
    """Finite auxiliary temperature, as the dimensionless ratio T'/T > 0."""

    ratio: float

    def __post_init__(self):
        ratio = float(self.ratio)
        if not math.isfinite(ratio) or ratio <= 0.0:
            raise ValueError(f"temperature ratio must be positive and finite, got {self.ratio!r}")
        object.__setattr__(self, "ratio", ratio)


@dataclass(frozen=True)
class InfiniteTemp:
    """Infinite auxiliary temperature: the Bose factor reduces to 1/(e^mu - 1)."""


INFINITE_TEMP = InfiniteTemp()

TempKind = FiniteTemp | InfiniteTemp


@dataclass(frozen=True)
class SpectralAtom:
    """One weighted delta atom at (T', mu)."""

    weight: float
    temp: TempKind
    mu: float

    def __post_init__(self):
        weight = float(self.weight)
        mu = float(self.mu)
        if not math.isfinite(weight) or weight <= 0.0:
            raise ValueError(f"atom weight must be positive and finite, got {self.weight!r}")
        if not math.isfinite(mu) or mu < 0.0:
            raise ValueError(f"chemical potential must be finite and >= 0, got {self.mu!r}")
        if isinstance(self.temp, InfiniteTemp) and mu == 0.0:
            raise ValueError("an infinite-temperature atom needs mu > 0; "
                             "its Bose factor 1/(e^mu - 1) diverges at mu = 0")
        if not isinstance(self.temp, (FiniteTemp, InfiniteTemp)):
            raise TypeError(f"temp must be FiniteTemp or InfiniteTemp, got {self.temp!r}")
        object.__setattr__(self, "weight", weight)
        object.__setattr__(self, "mu", mu)

    def to_json(self) -> dict:
        temp = "infinite" if isinstance(self.temp, InfiniteTemp) else self.temp.ratio
        return {"weight": self.weight, "temp": temp, "mu": self.mu}

    @classmethod
    def from_json(cls, obj: dict) -> "SpectralAtom":
        temp = obj["temp"]
        kind: TempKind = INFINITE_TEMP if temp == "infinite" else FiniteTemp(temp)
        return cls(weight=obj["weight"], temp=kind, mu=obj["mu"])


@dataclass(frozen=True)
class SpectralFunction:
    """A finite, nonempty collection of spectral atoms.

    Atoms with identical (temp, mu) are merged at construction by summing
    their weights; first-occurrence order is preserved.
    """

    atoms: tuple[SpectralAtom, ...]

    def __post_init__(self):
        atoms = tuple(self.atoms)
        if not atoms:
            raise ValueError("a spectral function needs at least one atom")
        merged: dict = {}
        for atom in atoms:
            key = (atom.temp, atom.mu)
            if key in merged:
                prev = merged[key]
                merged[key] = SpectralAtom(prev.weight + atom.weight, atom.temp, atom.mu)
            else:
                merged[key] = atom
        object.__setattr__(self, "atoms", tuple(merged.values()))

    def to_json(self) -> list[dict]:
        return [atom.to_json() for atom in self.atoms]

    @classmethod
    def from_json(cls, obj: list[dict]) -> "SpectralFunction":
        return cls(tuple(SpectralAtom.from_json(entry) for entry in obj))


def _two_atom_spectrum(r: float, occupancy: float) -> SpectralFunction:
    """Blackbody atom of weight cosh(2r) plus, if the non-thermal occupancy
    is positive, a unit-weight infinite-temperature atom at mu = log1p(1/occ)."""
    blackbody = SpectralAtom(weight=math.cosh(2.0 * r), temp=FiniteTemp(1.0), mu=0.0)
    if occupancy == 0.0:
        return SpectralFunction((blackbody,))
    # cosh^2 - sinh^2 = 1 makes the defining ratio (occ + 1)/occ exactly.
    mu = math.log1p(1.0 / occupancy)
    return SpectralFunction((blackbody, SpectralAtom(weight=1.0, temp=INFINITE_TEMP, mu=mu)))


def spectral_for_photons_in_squeezed_thermal(p: ModeParameters) -> SpectralFunction:
    """Spectral function whose evaluation reproduces the photon mean.

    The infinite-temperature atom sits at
    mu = ln[(cosh^2 r + |a'|^2) / (sinh^2 r + |a'|^2)] with a' the
    effective amplitude; it is absent for r = 0, alpha = 0.
    """
    r = p.squeeze.r
    occupancy = math.sinh(r) ** 2 + abs(effective_amplitude(p)) ** 2
    return _two_atom_spectrum(r, occupancy)


def spectral_for_squeezed_in_photon_thermal(p: ModeParameters) -> SpectralFunction:
    """Spectral function for the dual ordering.

    Identical structure, but the chemical potential uses the bare
    displacement: mu = ln[(cosh^2 r + |alpha|^2) / (sinh^2 r + |alpha|^2)].
    """
    r = p.squeeze.r
    occupancy = math.sinh(r) ** 2 + p.coherent.mag ** 2
    return _two_atom_spectrum(r, occupancy)


def evaluate_representation(sf: SpectralFunction, x) -> float:
    """Sum of weight / (e^{mu + x/ratio} - 1) over the atoms.

    Infinite-temperature atoms contribute weight / (e^mu - 1), independent
    of x. The result reproduces the corresponding closed-form mean.
    """
    xv = _as_x(x)
    total = 0.0
    for atom in sf.atoms:
        if isinstance(atom.temp, InfiniteTemp):
            if atom.mu <= 0.0:
                raise ValueError("infinite-temperature atom with mu = 0 diverges")
            exponent = atom.mu
        else:
            exponent = atom.mu + xv / atom.temp.ratio
        total += atom.weight * thermal_mean(exponent)
    return total


def normalization_integral(sf: SpectralFunction) -> float:
    """Total weight of the spectral function; 1 + cosh(2r) when the
    infinite-temperature atom is present, cosh(2r) otherwise."""
    return sum(atom.weight for atom in sf.atoms)


def equilibrium_temperature(sf: SpectralFunction, temperature_kelvin: float) -> float:
    """First moment of T' over the finite-temperature atoms, in kelvin.

    For the spectra built here this is cosh(2r) * T >= T: squeezing raises
    the apparent blackbody temperature. Infinite-temperature atoms are
    excluded from the moment.
    """
    t = float(temperature_kelvin)
    if not math.isfinite(t) or t <= 0.0:
        raise ValueError(f"temperature must be positive and finite, got {temperature_kelvin!r}")
    finite = [atom for atom in sf.atoms if isinstance(atom.temp, FiniteTemp)]
    if not finite:
        raise ValueError("no finite-temperature atom to average over")
    return sum(atom.weight * atom.temp.ratio * t for atom in finite)
