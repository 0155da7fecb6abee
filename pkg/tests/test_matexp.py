"""Exercises both matrix-exponential backends against scipy and each other."""

import numpy as np
import pytest
import scipy.linalg

from sqthermal import matexp
from sqthermal import _expm_py


def _random_complex(n, scale, seed):
    rng = np.random.default_rng(seed)
    m = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return scale * m / np.linalg.norm(m, 1)


BACKENDS = [pytest.param(_expm_py.expm, id="python")]
if matexp.available_backends().get("cython"):
    from sqthermal import _expm_cy
    BACKENDS.append(pytest.param(_expm_cy.expm, id="cython"))


@pytest.mark.parametrize("expm", BACKENDS)
def test_expm_identity_and_zero(expm):
    z = np.zeros((4, 4), dtype=complex)
    np.testing.assert_array_equal(expm(z), np.eye(4, dtype=complex))
    out = expm(np.zeros((0, 0), dtype=complex))
    assert out.shape == (0, 0)


@pytest.mark.parametrize("expm", BACKENDS)
def test_expm_diagonal(expm):
    d = np.diag(np.array([0.1, -0.7 + 0.3j, 2.0j]))
    np.testing.assert_allclose(expm(d), np.diag(np.exp(np.diag(d))),
                               rtol=1e-14, atol=1e-15)


@pytest.mark.parametrize("expm", BACKENDS)
def test_expm_nilpotent(expm):
    # strictly upper triangular: series terminates, exact answer known
    n = np.zeros((3, 3), dtype=complex)
    n[0, 1] = 2.0
    n[1, 2] = -1.0j
    expect = np.eye(3, dtype=complex) + n + n @ n / 2.0
    np.testing.assert_allclose(expm(n), expect, rtol=1e-14, atol=1e-15)


# norms spanning every Pade order plus the scaling-and-squaring branch
NORMS = [0.004, 0.1, 0.5, 1.5, 4.0, 40.0]


@pytest.mark.parametrize("expm", BACKENDS)
@pytest.mark.parametrize("scale", NORMS)
def test_expm_matches_scipy(expm, scale):
    a = _random_complex(24, scale, seed=int(scale * 1000))
    ours = expm(a)
    ref = scipy.linalg.expm(a)
    np.testing.assert_allclose(ours, ref, rtol=1e-11, atol=1e-13)


@pytest.mark.parametrize("scale", NORMS)
def test_backends_agree(scale):
    if not matexp.available_backends().get("cython"):
        pytest.skip("compiled kernel not built")
    from sqthermal import _expm_cy
    a = _random_complex(32, scale, seed=7)
    np.testing.assert_allclose(_expm_cy.expm(a), _expm_py.expm(a),
                               rtol=1e-13, atol=1e-15)


@pytest.mark.parametrize("expm", BACKENDS)
def test_expm_antihermitian_gives_unitary(expm):
    rng = np.random.default_rng(11)
    m = rng.standard_normal((40, 40)) + 1j * rng.standard_normal((40, 40))
    g = m - m.conj().T
    u = expm(g)
    defect = np.abs(u @ u.conj().T - np.eye(40)).max()
    assert defect < 1e-12


@pytest.mark.parametrize("expm", BACKENDS)
def test_expm_rejects_nonsquare(expm):
    with pytest.raises(ValueError):
        expm(np.zeros((3, 4), dtype=complex))


def test_active_backend_is_consistent():
    name = matexp.backend_name()
    assert name in ("cython", "python")
    avail = matexp.available_backends()
    assert callable(avail["python"])
    if name == "cython":
        assert matexp.expm is avail["cython"]
    a = _random_complex(16, 1.5, seed=3)
    np.testing.assert_allclose(matexp.expm(a), _expm_py.expm(a),
                               rtol=1e-13, atol=1e-15)


def test_pure_python_env_override():
    import os
    import subprocess
    import sys

    code = "import sqthermal.matexp as m; print(m.backend_name())"
    out = subprocess.run(
        [sys.executable, "-c", code],
        capture_output=True, text=True, check=True,
        env={**os.environ, "SQTHERMAL_PURE_PYTHON": "1"},
    )
    assert out.stdout.strip() == "python"
