"""Three ways to solve the linear flight-time program.

``solve_paper_closed_form`` evaluates the published optimum formulas verbatim,
``solve_grid`` is an exhaustive lattice oracle and ``solve_analytic`` is the
exact piecewise solution checked against the oracle.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

import numba
import numpy as np

from ..exceptions import DivisionUndefinedError, InvalidParameterError
from .problem import OptimizationProblem, is_feasible, objective_eq30


class SolutionSource(str, enum.Enum):
    PAPER_CLOSED_FORM = "paper_closed_form"
    GRID = "grid"
    ANALYTIC = "analytic"


@dataclass(frozen=True)
class Solution:
    eta_bat: float
    eta_ps: float
    objective: float
    feasible: bool
    source: SolutionSource
    multipliers: Optional[dict] = None
    # Optimal set along the flat eta_bat direction at the returned eta_ps.
    eta_bat_range: Optional[tuple] = None
    note: str = field(default="")

    def to_dict(self) -> dict:
        return {
            "source": self.source.value,
            "eta_bat": self.eta_bat,
            "eta_ps": self.eta_ps,
            "objective": self.objective,
            "feasible": self.feasible,
            "eta_bat_min": None if self.eta_bat_range is None else self.eta_bat_range[0],
            "eta_bat_max": None if self.eta_bat_range is None else self.eta_bat_range[1],
            "note": self.note,
        }


def solve_paper_closed_form(problem: OptimizationProblem) -> Solution:
    """``eta_bat = G2 / E_th`` and ``eta_ps = G1 * E_th / G2``, unclamped.

    Values outside [0, 1] are returned as computed and flagged infeasible.
    """
    if problem.e_threshold == 0:
        raise DivisionUndefinedError("E_th = 0: closed form undefined")
    if problem.g2 == 0:
        raise DivisionUndefinedError("G2 = 0: closed form undefined")
    eta_bat = problem.g2 / problem.e_threshold
    eta_ps = problem.g1 * problem.e_threshold / problem.g2
    return Solution(
        eta_bat=eta_bat,
        eta_ps=eta_ps,
        objective=float(objective_eq30(problem, eta_ps)),
        feasible=is_feasible(problem, eta_bat, eta_ps),
        source=SolutionSource.PAPER_CLOSED_FORM,
    )


@numba.njit(cache=True)
def _scan_lattice(etas, order, g1, e_th, g2, tol):
    # Rows (eta_ps) visited by decreasing objective; within a row the first
    # feasible column is the smallest feasible eta_bat.
    n = etas.shape[0]
    for idx in range(n):
        i = order[idx]
        a = etas[i] * g1 - e_th
        for j in range(n):
            if etas[j] * a + g2 >= -tol:
                return i, j
    return -1, -1


@numba.njit(cache=True)
def _row_feasible_span(etas, eta_ps, g1, e_th, g2, tol):
    lo = -1
    hi = -1
    a = eta_ps * g1 - e_th
    for j in range(etas.shape[0]):
        if etas[j] * a + g2 >= -tol:
            if lo < 0:
                lo = j
            hi = j
    return lo, hi


def solve_grid(problem: OptimizationProblem, resolution: int = 1001) -> Solution:
    """Exhaustive scan of the ``resolution x resolution`` lattice on the unit square.

    Returns the feasible lattice point with the largest objective; ties go to
    the smallest ``eta_ps`` and then the smallest ``eta_bat``. The scan visits
    rows in order of decreasing objective and stops at the first row holding a
    feasible point, so no unvisited point can beat the answer.
    """
    if resolution < 2:
        raise InvalidParameterError("resolution must be >= 2")
    etas = np.linspace(0.0, 1.0, resolution)
    objective = objective_eq30(problem, etas)
    # stable sort keeps ascending eta_ps inside ties
    order = np.argsort(-objective, kind="stable")
    tol = 1e-12 * problem.scale
    i, j = _scan_lattice(etas, order, problem.g1, problem.e_threshold, problem.g2, tol)
    if i < 0:
        return Solution(eta_bat=float("nan"), eta_ps=float("nan"), objective=float("nan"), feasible=False,
                        source=SolutionSource.GRID, note="no feasible lattice point")
    lo, hi = _row_feasible_span(etas, etas[i], problem.g1, problem.e_threshold, problem.g2, tol)
    return Solution(
        eta_bat=float(etas[j]),
        eta_ps=float(etas[i]),
        objective=float(objective[i]),
        feasible=True,
        source=SolutionSource.GRID,
        eta_bat_range=(float(etas[lo]), float(etas[hi])),
    )


def solve_analytic(problem: OptimizationProblem) -> Solution:
    """Exact optimum of the linear program.

    The objective falls with ``eta_ps`` and ignores ``eta_bat``, so the answer
    is the smallest ``eta_ps`` admitting some feasible ``eta_bat``:

    * ``G2 >= 0``: ``eta_ps = 0``; every ``eta_bat`` in ``[0, min(1, G2/E_th)]``
      is optimal and ``eta_bat = 0`` is reported.
    * ``G2 < 0``: c1 needs ``eta_bat * (eta_ps*G1 - E_th) >= -G2 > 0``, which is
      easiest at ``eta_bat = 1``, giving ``eta_ps = (E_th - G2) / G1``. This is
      also ``(2 E_th - E_C) / G1``. Above 1 (or with ``G1 = 0``) nothing is
      feasible.
    """
    g1, g2, e_th = problem.g1, problem.g2, problem.e_threshold
    if g2 >= 0:
        top = 1.0 if e_th <= 0 else min(1.0, g2 / e_th)
        return Solution(0.0, 0.0, float(objective_eq30(problem, 0.0)), True, SolutionSource.ANALYTIC,
                        eta_bat_range=(0.0, top))
    if g1 <= 0:
        return Solution(1.0, float("inf"), float("nan"), False, SolutionSource.ANALYTIC,
                        note="G1 = 0 and G2 < 0: c1 cannot hold")
    eta_ps = (e_th - g2) / g1
    if eta_ps > 1.0:
        return Solution(1.0, eta_ps, float(objective_eq30(problem, eta_ps)), False, SolutionSource.ANALYTIC,
                        note="required eta_ps exceeds 1")
    return Solution(1.0, eta_ps, float(objective_eq30(problem, eta_ps)), True, SolutionSource.ANALYTIC,
                    eta_bat_range=(1.0, 1.0))


def agree_within_lattice(analytic: Solution, grid: Solution, resolution: int) -> bool:
    """Does the analytic optimum lie within one lattice step of the grid's optimal set?

    ``eta_ps`` is compared directly. Because the objective is flat in
    ``eta_bat``, that coordinate is compared against the span of tied optimal
    lattice points on the grid's optimal row.
    """
    if analytic.feasible != grid.feasible:
        return False
    if not grid.feasible:
        return True
    step = 1.0 / (resolution - 1)
    slack = step + 1e-12
    if abs(analytic.eta_ps - grid.eta_ps) > slack:
        return False
    lo, hi = grid.eta_bat_range
    return lo - slack <= analytic.eta_bat <= hi + slack
