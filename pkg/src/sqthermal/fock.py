"""Truncated Fock-space oracle for the closed-form statistics.

Everything here is deliberately brute force: ladder operators are dense
matrices, the squeeze and displacement operators are matrix exponentials
of their generators, states are explicit density matrices, and moments
are traces. The only subtlety is truncation, handled by doubling the
dimension until the mean and variance both stop moving
(:func:`converge_statistics`).

Truncated generators remain exactly anti-Hermitian, so the truncated
squeeze/displacement operators are unitary to rounding error at any
dimension; truncation error instead shows up in the traces, which is what
the convergence loop watches.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .closed_form import ModeParameters, NumberStatistics, StateKind
from .matexp import expm
from .params import CoherentAmplitude, SqueezeParameter, _as_x

DEFAULT_DIM_START = 32
DEFAULT_DIM_MAX = 512
DEFAULT_REL_TOL = 1e-8
# The oracle refuses squeezes it cannot faithfully truncate by the default cap.
SQUEEZE_R_MAX = 2.0
# Coherent displacements need dim >> |alpha|^2; refuse when |alpha|^2 > dim/4.
DISPLACEMENT_DIM_FRACTION = 0.25
UNITARITY_TOL = 1e-8


class ConvergenceError(RuntimeError):
    """Truncated computation failed to meet its tolerance; carries the report."""

    def __init__(self, message: str, report: "TruncationReport | None" = None):
        super().__init__(message)
        self.report = report


def _read_only(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class FockSpace:
    """Dense ladder matrices on the lowest `dim` number states."""

    dim: int
    annihilate: np.ndarray
    create: np.ndarray


@lru_cache(maxsize=8)
def build_fock_space(dim: int) -> FockSpace:
    """Ladder matrices with a[n-1, n] = sqrt(n); requires dim >= 2."""
    dim = int(dim)
    if dim < 2:
        raise ValueError(f"Fock dimension must be >= 2, got {dim}")
    a = np.diag(np.sqrt(np.arange(1, dim, dtype=np.float64)), 1).astype(np.complex128)
    return FockSpace(dim=dim, annihilate=_read_only(a), create=_read_only(a.conj().T.copy()))


@dataclass(frozen=True, eq=False)
class ModeOperator:
    """A dense operator tied to the Fock space it acts on."""

    matrix: np.ndarray
    space: FockSpace

    def __post_init__(self):
        if self.matrix.shape != (self.space.dim, self.space.dim):
            raise ValueError(
                f"operator shape {self.matrix.shape} does not match dim {self.space.dim}")
        _read_only(self.matrix)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace state matrix.

    Hermiticity and trace are enforced here; positivity is expensive at
    construction time and is asserted in the test suite instead.
    """

    matrix: np.ndarray
    space: FockSpace

    def __post_init__(self):
        m = self.matrix
        if m.shape != (self.space.dim, self.space.dim):
            raise ValueError(f"state shape {m.shape} does not match dim {self.space.dim}")
        defect = float(np.abs(m - m.conj().T).max())
        if defect > 1e-10:
            raise ValueError(f"state is not Hermitian (max asymmetry {defect:.3e})")
        trace = complex(np.trace(m))
        if abs(trace - 1.0) > 1e-10:
            raise ValueError(f"state trace {trace} is not 1")
        _read_only(m)


@dataclass(frozen=True)
class TruncationReport:
    """Trace of the dimension-doubling loop for one statistics request."""

    dims_tried: tuple[int, ...]
    means: tuple[float, ...]
    variances: tuple[float, ...]
    converged: bool
    final_rel_change: float

    def to_json(self) -> dict:
        return {
            "dims_tried": list(self.dims_tried),
            "means": list(self.means),
            "variances": list(self.variances),
            "converged": self.converged,
            "final_rel_change": self.final_rel_change,
        }


def leading_block(matrix: np.ndarray) -> np.ndarray:
    """Top-left floor(N/2) block, where truncation artifacts are negligible."""
    half = matrix.shape[0] // 2
    return matrix[:half, :half]


def _check_unitary(u: np.ndarray, what: str) -> None:
    half = leading_block(u.conj().T @ u)
    defect = float(np.abs(half - np.eye(half.shape[0])).max())
    if defect > UNITARITY_TOL:
        raise ConvergenceError(
            f"{what} is not unitary on the leading block "
            f"(defect {defect:.3e} > {UNITARITY_TOL:g}) at dim {u.shape[0]}")


@lru_cache(maxsize=48)
def _squeeze_matrix(dim: int, r: float, phi: float) -> np.ndarray:
    fs = build_fock_space(dim)
    zeta = r * complex(math.cos(phi), math.sin(phi))
    generator = (-0.5 * zeta) * (fs.create @ fs.create) \
        + (0.5 * zeta.conjugate()) * (fs.annihilate @ fs.annihilate)
    s = expm(generator)
    _check_unitary(s, f"squeeze operator (r={r:g})")
    return _read_only(s)


@lru_cache(maxsize=48)
def _displacement_matrix(dim: int, mag: float, theta: float) -> np.ndarray:
    fs = build_fock_space(dim)
    alpha = mag * complex(math.cos(theta), math.sin(theta))
    generator = alpha * fs.create - alpha.conjugate() * fs.annihilate
    d = expm(generator)
    _check_unitary(d, f"displacement operator (|alpha|={mag:g})")
    return _read_only(d)


def squeeze_operator(fs: FockSpace, z: SqueezeParameter, *,
                     r_max: float = SQUEEZE_R_MAX) -> ModeOperator:
    """exp(-(zeta/2) adag^2 + (conj(zeta)/2) a^2) on the truncated space.

    Refuses r > r_max (default 2.0): beyond that the default dimension cap
    cannot hold the state's Fock tail.
    """
    if z.r > r_max:
        raise ValueError(f"squeeze magnitude r={z.r:g} exceeds the oracle cap r_max={r_max:g}")
    return ModeOperator(matrix=_squeeze_matrix(fs.dim, z.r, z.phi), space=fs)


def displacement_operator(fs: FockSpace, a: CoherentAmplitude) -> ModeOperator:
    """exp(alpha adag - conj(alpha) a) on the truncated space."""
    if a.mag ** 2 > DISPLACEMENT_DIM_FRACTION * fs.dim:
        raise ValueError(
            f"|alpha|^2 = {a.mag ** 2:g} is too large for dim {fs.dim}; "
            f"need |alpha|^2 <= dim * {DISPLACEMENT_DIM_FRACTION:g}")
    return ModeOperator(matrix=_displacement_matrix(fs.dim, a.mag, a.theta), space=fs)


def b_operator(fs: FockSpace, p: ModeParameters) -> ModeOperator:
    """The shifted quasi-photon mode cosh(r) a + e^{i phi} sinh(r) adag - alpha."""
    r = p.squeeze.r
    gamma = complex(math.cos(p.squeeze.phi), math.sin(p.squeeze.phi)) * math.sinh(r)
    b = math.cosh(r) * fs.annihilate + gamma * fs.create \
        - p.alpha * np.eye(fs.dim, dtype=np.complex128)
    return ModeOperator(matrix=b, space=fs)


def b_operator_conjugated(fs: FockSpace, p: ModeParameters) -> ModeOperator:
    """Same mode built the slow way, as S D a Ddag Sdag.

    Used to cross-check the closed form against the exponential construction.
    Agreement with :func:`b_operator` holds only on leading blocks the
    truncated squeeze can feed: level n spreads over roughly
    [n e^{-2r}, n e^{2r}], so rows with n e^{2r} near fs.dim are contaminated
    by the cut tail no matter how accurate expm is. Compare blocks of size
    well under fs.dim * e^{-2r}.
    """
    s = squeeze_operator(fs, p.squeeze).matrix
    d = displacement_operator(fs, p.coherent).matrix
    u = s @ d
    return ModeOperator(matrix=u @ fs.annihilate @ u.conj().T, space=fs)


def _thermal_weights(dim: int, x: float) -> np.ndarray:
    levels = np.arange(dim, dtype=np.float64)
    w = np.exp(-x * levels)
    return w / w.sum()


def thermal_density(fs: FockSpace, x) -> DensityMatrix:
    """Thermal state diag(e^{-x n}) / Z, normalized over the truncated space."""
    w = _thermal_weights(fs.dim, _as_x(x))
    return DensityMatrix(matrix=np.diag(w).astype(np.complex128), space=fs)


def squeezed_thermal_density(fs: FockSpace, p: ModeParameters) -> DensityMatrix:
    """Thermal state of the quasi-photon quanta: U rho_thermal Udag with U = S D."""
    s = squeeze_operator(fs, p.squeeze).matrix
    d = displacement_operator(fs, p.coherent).matrix
    u = s @ d
    rho = u @ thermal_density(fs, p.x).matrix @ u.conj().T
    return DensityMatrix(matrix=rho, space=fs)


def oracle_statistics(fs: FockSpace, p: ModeParameters, which: StateKind) -> NumberStatistics:
    """Mean and variance from explicit traces at one fixed dimension."""
    if which is StateKind.PHOTONS_IN_SQUEEZED_THERMAL:
        rho = squeezed_thermal_density(fs, p).matrix
        occupation = np.real(np.diagonal(rho))
        levels = np.arange(fs.dim, dtype=np.float64)
        mean = float(occupation @ levels)
        second = float(occupation @ (levels * levels))
    elif which is StateKind.SQUEEZED_IN_PHOTON_THERMAL:
        weights = _thermal_weights(fs.dim, _as_x(p.x))
        b = b_operator(fs, p).matrix
        m = b.conj().T @ b
        mean = float(np.real(np.diagonal(m)) @ weights)
        # diag(M @ M) without the full product; M is Hermitian.
        m2_diag = np.real(np.einsum("ij,ji->i", m, m))
        second = float(m2_diag @ weights)
    else:
        raise ValueError(f"unknown state kind: {which!r}")
    variance = second - mean * mean
    # Traces of a positive operator; tiny negatives are pure rounding.
    return NumberStatistics(mean=max(mean, 0.0), variance=max(variance, 0.0))


def _rel_change(new: float, old: float) -> float:
    return abs(new - old) / max(abs(new), abs(old), 1e-12)


def converge_statistics(p: ModeParameters, which: StateKind,
                        rel_tol: float = DEFAULT_REL_TOL, *,
                        dim_start: int = DEFAULT_DIM_START,
                        dim_max: int = DEFAULT_DIM_MAX) -> tuple[NumberStatistics, TruncationReport]:
    """Double the dimension until mean and variance both settle.

    Convergence means both statistics changed by less than `rel_tol`
    (relatively) at the last doubling. Raises :class:`ConvergenceError`
    carrying the :class:`TruncationReport` when `dim_max` is hit first.
    """
    if not (math.isfinite(rel_tol) and rel_tol > 0.0):
        raise ValueError(f"rel_tol must be positive, got {rel_tol!r}")
    if dim_start < 2 or dim_max < dim_start:
        raise ValueError(f"bad dimension range [{dim_start}, {dim_max}]")

    dims: list[int] = []
    means: list[float] = []
    variances: list[float] = []
    change = math.inf
    dim = dim_start
    while dim <= dim_max:
        stats = oracle_statistics(build_fock_space(dim), p, which)
        dims.append(dim)
        means.append(stats.mean)
        variances.append(stats.variance)
        if len(dims) >= 2:
            change = max(_rel_change(means[-1], means[-2]),
                         _rel_change(variances[-1], variances[-2]))
            if change < rel_tol:
                report = TruncationReport(tuple(dims), tuple(means), tuple(variances),
                                          converged=True, final_rel_change=change)
                return stats, report
        dim *= 2

    report = TruncationReport(tuple(dims), tuple(means), tuple(variances),
                              converged=False, final_rel_change=change)
    raise ConvergenceError(
        f"statistics did not converge to rel_tol={rel_tol:g} by dim {dim_max} "
        f"(last relative change {change:.3e})", report=report)
