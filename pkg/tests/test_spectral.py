import math

import pytest
from hypothesis import given, settings, strategies as st

from sqthermal.closed_form import (
    ModeParameters,
    StateKind,
    mean_photons_in_squeezed_thermal,
    mean_squeezed_in_photon_thermal,
)
from sqthermal.spectral import (
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

# mpmath 50-digit references for the point-atom chemical potential
MU_B_REF = 0.94153651457128132771       # r=0.5, phi=0, alpha=1
MU_A_REF = 0.58022914138719528435       # r=0.5, alpha=1
MU_B_NOALPHA = 1.5438736658106094501    # r=0.5, alpha=0

P_REF = ModeParameters.from_values(r=0.5, alpha_mag=1.0, x=1.0)


def _point_atom(sf):
    atoms = [a for a in sf.atoms if isinstance(a.temp, InfiniteTemp)]
    assert len(atoms) == 1
    return atoms[0]


def _blackbody_atom(sf):
    atoms = [a for a in sf.atoms if isinstance(a.temp, FiniteTemp)]
    assert len(atoms) == 1
    return atoms[0]


def test_photons_spectrum_structure():
    sf = spectral_for_photons_in_squeezed_thermal(P_REF)
    assert len(sf.atoms) == 2
    bb = _blackbody_atom(sf)
    assert bb.weight == pytest.approx(math.cosh(1.0), rel=1e-15)
    assert bb.temp.ratio == 1.0
    assert bb.mu == 0.0
    pt = _point_atom(sf)
    assert pt.weight == 1.0
    assert pt.mu == pytest.approx(MU_B_REF, rel=1e-14)


def test_squeezed_spectrum_point_atom():
    sf = spectral_for_squeezed_in_photon_thermal(P_REF)
    pt = _point_atom(sf)
    assert pt.mu == pytest.approx(MU_A_REF, rel=1e-14)
    assert _blackbody_atom(sf).weight == pytest.approx(math.cosh(1.0), rel=1e-15)


def test_point_atom_without_displacement():
    sf = spectral_for_photons_in_squeezed_thermal(
        ModeParameters.from_values(r=0.5, x=1.0))
    assert _point_atom(sf).mu == pytest.approx(MU_B_NOALPHA, rel=1e-14)


def test_degenerate_spectrum_is_single_blackbody():
    sf = spectral_for_photons_in_squeezed_thermal(ModeParameters.from_values(x=1.0))
    assert len(sf.atoms) == 1
    bb = _blackbody_atom(sf)
    assert bb.weight == 1.0
    assert normalization_integral(sf) == 1.0


def test_normalization_value():
    sf = spectral_for_photons_in_squeezed_thermal(P_REF)
    assert normalization_integral(sf) == pytest.approx(
        2.5430806348152437785, rel=1e-15)  # 1 + cosh(1)
    sf1 = spectral_for_squeezed_in_photon_thermal(
        ModeParameters.from_values(r=1.0, alpha_mag=0.5, x=2.0))
    assert normalization_integral(sf1) == pytest.approx(
        4.7621956910836314596, rel=1e-15)  # 1 + cosh(2)


def test_reconstruction_frozen_point():
    sf = spectral_for_photons_in_squeezed_thermal(P_REF)
    got = evaluate_representation(sf, 1.0)
    assert got == pytest.approx(1.5374567448626694744, rel=1e-13)


def test_equilibrium_temperature_value():
    sf = spectral_for_photons_in_squeezed_thermal(P_REF)
    assert equilibrium_temperature(sf, 300.0) == pytest.approx(
        462.92419044457313354, rel=1e-13)  # 300 cosh(1)


def test_equilibrium_temperature_requires_finite_atom():
    sf = SpectralFunction((SpectralAtom(1.0, INFINITE_TEMP, 0.5),))
    with pytest.raises(ValueError):
        equilibrium_temperature(sf, 300.0)


params_strategy = st.builds(
    ModeParameters.from_values,
    r=st.floats(min_value=0.0, max_value=2.0),
    phi=st.floats(min_value=0.0, max_value=2.0 * math.pi, exclude_max=True),
    alpha_mag=st.floats(min_value=0.0, max_value=3.0),
    alpha_phase=st.floats(min_value=0.0, max_value=2.0 * math.pi,
                          exclude_max=True),
    x=st.floats(min_value=0.1, max_value=10.0),
)


@settings(max_examples=300)
@given(params_strategy)
def test_reconstruction_identity_photons(p):
    sf = spectral_for_photons_in_squeezed_thermal(p)
    got = evaluate_representation(sf, p.x)
    want = mean_photons_in_squeezed_thermal(p)
    assert got == pytest.approx(want, rel=1e-12)


@settings(max_examples=300)
@given(params_strategy)
def test_reconstruction_identity_squeezed(p):
    sf = spectral_for_squeezed_in_photon_thermal(p)
    got = evaluate_representation(sf, p.x)
    want = mean_squeezed_in_photon_thermal(p)
    assert got == pytest.approx(want, rel=1e-12)


@given(st.floats(min_value=0.0, max_value=2.0))
def test_normalization_law(r):
    p = ModeParameters.from_values(r=r, alpha_mag=0.3, x=1.0)
    sf = spectral_for_photons_in_squeezed_thermal(p)
    assert normalization_integral(sf) == pytest.approx(
        1.0 + math.cosh(2.0 * r), rel=1e-13)


@given(st.floats(min_value=1e-3, max_value=2.0),
       st.floats(min_value=1.0, max_value=1000.0))
def test_equilibrium_temperature_enhancement(r, t_kelvin):
    # squeezing always raises the matched blackbody temperature
    p = ModeParameters.from_values(r=r, x=1.0)
    sf = spectral_for_photons_in_squeezed_thermal(p)
    t_eq = equilibrium_temperature(sf, t_kelvin)
    assert t_eq == pytest.approx(math.cosh(2.0 * r) * t_kelvin, rel=1e-13)
    assert t_eq > t_kelvin


def test_atom_validation():
    with pytest.raises(ValueError):
        SpectralAtom(0.0, FiniteTemp(1.0), 0.0)  # zero weight
    with pytest.raises(ValueError):
        SpectralAtom(1.0, FiniteTemp(1.0), -0.1)  # negative mu
    with pytest.raises(ValueError):
        SpectralAtom(1.0, INFINITE_TEMP, 0.0)  # Bose factor diverges
    with pytest.raises(ValueError):
        FiniteTemp(0.0)
    with pytest.raises(ValueError):
        SpectralFunction(())


def test_duplicate_atoms_merge():
    sf = SpectralFunction((
        SpectralAtom(1.0, FiniteTemp(1.0), 0.0),
        SpectralAtom(2.0, FiniteTemp(1.0), 0.0),
        SpectralAtom(0.5, INFINITE_TEMP, 0.7),
    ))
    assert len(sf.atoms) == 2
    assert _blackbody_atom(sf).weight == 3.0


def test_json_round_trip():
    sf = spectral_for_photons_in_squeezed_thermal(P_REF)
    back = SpectralFunction.from_json(sf.to_json())
    assert back == sf
    pt = _point_atom(sf).to_json()
    assert pt["temp"] == "infinite"
    bb = _blackbody_atom(sf).to_json()
    assert bb["temp"] == 1.0


def test_evaluate_rejects_bad_x():
    sf = spectral_for_photons_in_squeezed_thermal(P_REF)
    with pytest.raises(ValueError):
        evaluate_representation(sf, -1.0)
    with pytest.raises(ValueError):
        evaluate_representation(sf, 0.0)
