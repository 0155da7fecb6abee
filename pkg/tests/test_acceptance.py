"""End-to-end acceptance checks.

Each test exercises one contract-level guarantee at its stated tolerance and
prints a single PASS/FAIL line so the suite output doubles as a checklist.
"""

import math
import subprocess
import sys
import time

import numpy as np
import pytest

from sqthermal.closed_form import (
    ModeParameters,
    StateKind,
    mean_photons_in_squeezed_thermal,
    mean_squeezed_in_photon_thermal,
    number_statistics,
    transform_parameters,
    variance_photons_in_squeezed_thermal,
    variance_squeezed_in_photon_thermal,
)
from sqthermal.fock import (
    b_operator,
    b_operator_conjugated,
    build_fock_space,
    converge_statistics,
    displacement_operator,
    leading_block,
    squeeze_operator,
    squeezed_thermal_density,
    thermal_density,
)
from sqthermal.params import (
    CoherentAmplitude,
    SqueezeParameter,
    thermal_mean,
    thermal_variance,
)
from sqthermal.spectral import (
    equilibrium_temperature,
    evaluate_representation,
    normalization_integral,
    spectral_for_photons_in_squeezed_thermal,
    spectral_for_squeezed_in_photon_thermal,
)
from sqthermal.verify import rel_err, verification_grid, verify_points

GRID_BUDGET_SECONDS = 60.0


def _report(capsys, label, ok):
    with capsys.disabled():
        print(f"[acceptance] {label}: {'PASS' if ok else 'FAIL'}")
    assert ok, label


def test_acceptance_grid_oracle_agreement(capsys):
    t0 = time.perf_counter()
    rows = verify_points(verification_grid())
    elapsed = time.perf_counter() - t0
    assert len(rows) == 2 * 108
    ok = (all(row.passed(1e-6) for row in rows)
          and elapsed < GRID_BUDGET_SECONDS)
    _report(capsys,
            f"closed forms match Fock oracle on 108-point grid "
            f"(rel 1e-6, {elapsed:.1f}s)", ok)


def test_acceptance_duality(capsys):
    rng = np.random.default_rng(20260822)
    worst = 0.0
    for _ in range(1000):
        p = ModeParameters.from_values(
            r=rng.uniform(0.0, 2.0),
            phi=rng.uniform(0.0, 2.0 * math.pi),
            alpha_mag=rng.uniform(0.0, 3.0),
            alpha_phase=rng.uniform(0.0, 2.0 * math.pi),
            x=rng.uniform(0.1, 10.0),
        )
        q = transform_parameters(p)
        worst = max(
            worst,
            rel_err(mean_squeezed_in_photon_thermal(q),
                    mean_photons_in_squeezed_thermal(p)),
            rel_err(variance_squeezed_in_photon_thermal(q),
                    variance_photons_in_squeezed_thermal(p)),
        )
    _report(capsys,
            f"ordering duality over 1000 seeded draws (rel 1e-12, "
            f"worst {worst:.2e})", worst < 1e-12)


def test_acceptance_ideal_gas_collapse(capsys):
    ok = True
    for x in (0.1, 0.6931, 1.0, 5.0):
        p = ModeParameters.from_values(x=x)
        for which in StateKind:
            s = number_statistics(p, which)
            ok &= rel_err(s.mean, thermal_mean(x)) < 1e-12
            ok &= rel_err(s.variance, thermal_variance(x)) < 1e-12
    p = ModeParameters.from_values(x=math.log(2.0))
    s = number_statistics(p, StateKind.PHOTONS_IN_SQUEEZED_THERMAL)
    ok &= rel_err(s.mean, 1.0) < 1e-12 and rel_err(s.variance, 2.0) < 1e-12
    _report(capsys,
            "no squeeze, no displacement collapses to the ideal Bose gas "
            "(rel 1e-12, variance nbar(nbar+1))", ok)


def test_acceptance_spectral_reconstruction(capsys):
    worst = 0.0
    for p in verification_grid():
        sf_b = spectral_for_photons_in_squeezed_thermal(p)
        sf_a = spectral_for_squeezed_in_photon_thermal(p)
        worst = max(
            worst,
            rel_err(evaluate_representation(sf_b, p.x),
                    mean_photons_in_squeezed_thermal(p)),
            rel_err(evaluate_representation(sf_a, p.x),
                    mean_squeezed_in_photon_thermal(p)),
        )
    _report(capsys,
            f"delta-atom spectra rebuild both closed-form means on the grid "
            f"(rel 1e-12, worst {worst:.2e})", worst < 1e-12)


def test_acceptance_temperature_enhancement(capsys):
    ok = True
    t_kelvin = 250.0
    for r in (0.0, 0.25, 0.5, 1.0, 2.0):
        p = ModeParameters.from_values(r=r, alpha_mag=0.5, x=1.0)
        sf = spectral_for_photons_in_squeezed_thermal(p)
        t_eq = equilibrium_temperature(sf, t_kelvin)
        ok &= rel_err(t_eq, math.cosh(2.0 * r) * t_kelvin) < 1e-12
        if r == 0.0:
            ok &= t_eq == t_kelvin
        else:
            ok &= t_eq > t_kelvin
    _report(capsys,
            "matched blackbody temperature is cosh(2r) x T, above T unless "
            "r=0 (rel 1e-12)", ok)


def test_acceptance_normalization(capsys):
    ok = True
    for r in (0.25, 0.5, 1.0, 2.0):
        p = ModeParameters.from_values(r=r, alpha_mag=1.0, x=1.0)
        sf = spectral_for_photons_in_squeezed_thermal(p)
        ok &= rel_err(normalization_integral(sf), 1.0 + math.cosh(2.0 * r)) < 1e-12
    degenerate = spectral_for_photons_in_squeezed_thermal(
        ModeParameters.from_values(x=1.0))
    ok &= normalization_integral(degenerate) == 1.0
    _report(capsys,
            "spectral weight totals 1 + cosh(2r), exactly 1 in the "
            "degenerate case (rel 1e-12)", ok)


def test_acceptance_operator_checks(capsys):
    dim = 128
    fs = build_fock_space(dim)
    p = ModeParameters.from_values(r=0.5, phi=0.7, alpha_mag=1.0,
                                   alpha_phase=0.4, x=1.0)

    b = b_operator(fs, p).matrix
    comm = b @ b.conj().T - b.conj().T @ b
    eye = np.eye(dim // 2)
    commutator_defect = np.abs(leading_block(comm) - eye).max()

    s = squeeze_operator(fs, p.squeeze).matrix
    d = displacement_operator(fs, p.coherent).matrix
    unitarity_defect = max(
        np.abs(leading_block(s.conj().T @ s) - eye).max(),
        np.abs(leading_block(d.conj().T @ d) - eye).max(),
    )

    # the conjugated build is only meaningful on blocks the truncated
    # squeeze can feed (level n spreads to ~n e^{2r}), so the agreement
    # check uses a gentler squeeze that keeps the whole 64-block inside
    p_dual = ModeParameters.from_values(r=0.15, phi=0.7, alpha_mag=0.5,
                                        alpha_phase=0.4, x=1.0)
    dual_defect = np.abs(leading_block(
        b_operator(fs, p_dual).matrix
        - b_operator_conjugated(fs, p_dual).matrix)).max()

    rho_plain = thermal_density(fs, 1.0).matrix
    rho_conj = squeezed_thermal_density(fs, p).matrix
    spec_plain = np.sort(np.linalg.eigvalsh(rho_plain))
    spec_conj = np.sort(np.linalg.eigvalsh(rho_conj))
    spectrum_drift = np.abs(spec_plain - spec_conj).max()

    ok = (commutator_defect < 1e-8 and unitarity_defect < 1e-8
          and dual_defect < 1e-7 and spectrum_drift < 1e-8)
    _report(capsys,
            f"dim-128 operator checks: commutator {commutator_defect:.1e}, "
            f"unitarity {unitarity_defect:.1e}, dual build {dual_defect:.1e}, "
            f"spectrum drift {spectrum_drift:.1e}", ok)


def test_acceptance_zero_temperature_limit(capsys):
    ok = True
    r = 0.5
    for mag in (0.0, 1.0):
        p = ModeParameters.from_values(r=r, alpha_mag=mag, x=700.0)
        eff = mag * math.cosh(r) - mag * math.sinh(r)  # real alpha, phi=0
        want_b = math.sinh(r) ** 2 + eff ** 2
        want_a = math.sinh(r) ** 2 + mag ** 2
        ok &= rel_err(mean_photons_in_squeezed_thermal(p), want_b) < 1e-6
        ok &= rel_err(mean_squeezed_in_photon_thermal(p), want_a) < 1e-6
        got_b, _ = converge_statistics(p, StateKind.PHOTONS_IN_SQUEEZED_THERMAL,
                                       rel_tol=1e-8)
        got_a, _ = converge_statistics(p, StateKind.SQUEEZED_IN_PHOTON_THERMAL,
                                       rel_tol=1e-8)
        ok &= rel_err(got_b.mean, want_b) < 1e-6
        ok &= rel_err(got_a.mean, want_a) < 1e-6
    _report(capsys,
            "x=700 closed forms and oracle reach the zero-temperature "
            "limits (rel 1e-6)", ok)


def test_acceptance_cli_contract(capsys):
    base = [sys.executable, "-m", "sqthermal"]
    grid = base + ["verify", "--grid", "--format", "csv"]
    first = subprocess.run(grid, capture_output=True)
    second = subprocess.run(grid, capture_output=True)
    malformed = subprocess.run(
        base + ["stats", "--state", "photons-in-squeezed-thermal",
                "--x", "-3"],
        capture_output=True)
    ok = (first.returncode == 0 and second.returncode == 0
          and first.stdout == second.stdout
          and len(first.stdout) > 0
          and malformed.returncode == 2)
    _report(capsys,
            "CLI: grid verify exits 0, malformed input exits 2, reruns "
            "byte-identical", ok)
