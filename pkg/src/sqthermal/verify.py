"""Cross-checking closed forms against the Fock oracle.

The built-in grid spans squeeze, displacement (magnitude and phase), and
temperature, and every point is checked for both orderings. The grid stays
inside the oracle's truncation comfort zone (r <= 0.8, |alpha| <= 1.5).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

from .closed_form import ModeParameters, NumberStatistics, StateKind, number_statistics
from .fock import (
    DEFAULT_DIM_MAX,
    DEFAULT_DIM_START,
    ConvergenceError,
    TruncationReport,
    converge_statistics,
)

GRID_SQUEEZE_MAG = (0.0, 0.3, 0.8)
GRID_SQUEEZE_PHASE = (0.0, math.pi / 2.0)
GRID_COHERENT_MAG = (0.0, 0.5, 1.5)
GRID_COHERENT_PHASE = (0.0, 1.0)
GRID_X = (0.5, 1.0, 3.0)

DEFAULT_COMPARE_TOL = 1e-6
# The oracle is converged at the comparison tolerance itself. The doubling
# test bounds the error of the PREVIOUS dimension, so the accepted value
# carries truncation error far below the measured change.
ORACLE_TOL_FACTOR = 1.0


def verification_grid() -> tuple[ModeParameters, ...]:
    """The standard cross-check grid (108 points), in deterministic order."""
    return tuple(
        ModeParameters.from_values(r=r, phi=phi, alpha_mag=mag, alpha_phase=theta, x=x)
        for r, phi, mag, theta, x in product(
            GRID_SQUEEZE_MAG, GRID_SQUEEZE_PHASE, GRID_COHERENT_MAG,
            GRID_COHERENT_PHASE, GRID_X)
    )


def rel_err(value: float, reference: float) -> float:
    """|value - reference| / |reference|, with 0/0 counted as exact."""
    diff = abs(value - reference)
    if reference == 0.0:
        return 0.0 if diff == 0.0 else math.inf
    return diff / abs(reference)


@dataclass(frozen=True)
class VerificationRow:
    """Closed form vs oracle for one (parameter point, ordering) pair."""

    params: ModeParameters
    state: StateKind
    closed: NumberStatistics
    oracle: NumberStatistics
    report: TruncationReport
    rel_err_mean: float
    rel_err_variance: float

    def passed(self, rel_tol: float) -> bool:
        return (self.report.converged
                and self.rel_err_mean < rel_tol
                and self.rel_err_variance < rel_tol)


def verify_point(p: ModeParameters, *, rel_tol: float = DEFAULT_COMPARE_TOL,
                 oracle_tol: float | None = None,
                 dim_start: int = DEFAULT_DIM_START,
                 dim_max: int = DEFAULT_DIM_MAX) -> list[VerificationRow]:
    """Both orderings at one point. Rows with a failed truncation still
    carry the last (unconverged) oracle values so reports stay printable."""
    if oracle_tol is None:
        oracle_tol = rel_tol * ORACLE_TOL_FACTOR
    rows = []
    for state in StateKind:
        closed = number_statistics(p, state)
        try:
            oracle, report = converge_statistics(
                p, state, oracle_tol, dim_start=dim_start, dim_max=dim_max)
        except ConvergenceError as exc:
            report = exc.report
            oracle = NumberStatistics(mean=report.means[-1], variance=report.variances[-1])
        rows.append(VerificationRow(
            params=p,
            state=state,
            closed=closed,
            oracle=oracle,
            report=report,
            rel_err_mean=rel_err(closed.mean, oracle.mean),
            rel_err_variance=rel_err(closed.variance, oracle.variance),
        ))
    return rows


def verify_points(points, **kwargs) -> list[VerificationRow]:
    rows = []
    for p in points:
        rows.extend(verify_point(p, **kwargs))
    return rows
