"""KKT residuals for the linear flight-time program.

The program is written as ``min f = -objective`` subject to ``c_i >= 0`` with
Lagrangian ``L = f - sum_i lambda_i c_i``. Constraints 1-3 are the battery
constraint and the two upper bounds; 4-5 are the lower bounds ``eta_bat >= 0``
and ``eta_ps >= 0``, needed whenever an optimum sits at zero.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import nnls

from .problem import OptimizationProblem, constraint_c1
from .solvers import Solution

NAMES = ("lambda1", "lambda2", "lambda3", "lambda4", "lambda5")


def constraint_values(problem: OptimizationProblem, eta_bat: float, eta_ps: float) -> np.ndarray:
    return np.array([
        constraint_c1(problem, eta_bat, eta_ps),
        1.0 - eta_bat,
        1.0 - eta_ps,
        eta_bat,
        eta_ps,
    ])


def constraint_gradients(problem: OptimizationProblem, eta_bat: float, eta_ps: float) -> np.ndarray:
    """Rows are d c_i / d(eta_bat, eta_ps)."""
    return np.array([
        [eta_ps * problem.g1 - problem.e_threshold, eta_bat * problem.g1],
        [-1.0, 0.0],
        [0.0, -1.0],
        [1.0, 0.0],
        [0.0, 1.0],
    ])


def objective_gradient(problem: OptimizationProblem) -> np.ndarray:
    """Gradient of ``f = -objective`` in (eta_bat, eta_ps)."""
    return np.array([0.0, problem.gain_sum / problem.noise_uplink])


def stationarity(problem: OptimizationProblem, eta_bat: float, eta_ps: float, multipliers) -> np.ndarray:
    """(dL/d eta_bat, dL/d eta_ps).

    With ``lambda4 = lambda5 = 0`` these are exactly
    ``-lambda1 (eta_ps G1 - E_th) + lambda2`` and
    ``sum g_k / n1 - lambda1 eta_bat G1 + lambda3``.
    """
    lam = np.zeros(5)
    lam[: len(multipliers)] = multipliers
    return objective_gradient(problem) - constraint_gradients(problem, eta_bat, eta_ps).T @ lam


def eq40_residual(problem: OptimizationProblem, eta_bat: float, eta_ps: float) -> float:
    """``eta_ps eta_bat G1 + G2 - E_th eta_bat``: zero when the battery constraint is tight."""
    return eta_ps * eta_bat * problem.g1 + problem.g2 - problem.e_threshold * eta_bat


@dataclass(frozen=True)
class KKTReport:
    multipliers: dict
    stationarity: tuple
    stationarity_norm: float
    primal: dict
    primal_violation: float
    complementary_slackness: dict
    dual_min: float
    eq40_residual: float
    active: tuple
    satisfied: bool
    tol: float = field(default=1e-9)

    def to_dict(self) -> dict:
        return {
            "multipliers": dict(self.multipliers),
            "stationarity": list(self.stationarity),
            "stationarity_norm": self.stationarity_norm,
            "primal": dict(self.primal),
            "primal_violation": self.primal_violation,
            "complementary_slackness": dict(self.complementary_slackness),
            "dual_min": self.dual_min,
            "eq40_residual": self.eq40_residual,
            "active": list(self.active),
            "satisfied": self.satisfied,
        }


def recover_multipliers(problem: OptimizationProblem, eta_bat: float, eta_ps: float,
                        active_tol: float = 1e-9) -> np.ndarray:
    """Nonnegative least-squares multipliers on the active set; inactive ones are 0."""
    values = constraint_values(problem, eta_bat, eta_ps)
    scale = np.array([problem.scale, 1, 1, 1, 1])
    active = np.abs(values) <= active_tol * scale
    lam = np.zeros(5)
    if active.any():
        grads = constraint_gradients(problem, eta_bat, eta_ps)[active]
        sol, _ = nnls(grads.T, objective_gradient(problem))
        lam[active] = sol
    return lam


def kkt_residuals(problem: OptimizationProblem, solution: Solution, tol: float = 1e-9) -> KKTReport:
    """Stationarity, feasibility, slackness and dual-sign residuals at ``solution``.

    Multipliers come from ``solution.multipliers`` when present (missing names
    count as zero), otherwise from :func:`recover_multipliers`.
    Residuals are data: nothing here raises on a non-optimal point.
    """
    eb, ep = solution.eta_bat, solution.eta_ps
    if solution.multipliers:
        lam = np.array([float(solution.multipliers.get(n, 0.0)) for n in NAMES])
    else:
        lam = recover_multipliers(problem, eb, ep, tol)
    values = constraint_values(problem, eb, ep)
    stat = stationarity(problem, eb, ep, lam)
    cs = lam * values
    scale = np.array([problem.scale, 1, 1, 1, 1])
    active = tuple(NAMES[i] for i in range(5) if abs(values[i]) <= tol * scale[i])
    violation = max(0.0, float(np.max(-values / scale)))
    norm = float(np.linalg.norm(stat))
    stat_scale = max(1.0, float(np.abs(objective_gradient(problem)).max()))
    satisfied = bool(
        norm <= tol * stat_scale
        and violation <= tol
        and float(np.max(np.abs(cs))) <= tol * problem.scale * max(1.0, float(lam.max()))
        and float(lam.min()) >= -tol
    )
    return KKTReport(
        multipliers={n: float(v) for n, v in zip(NAMES, lam)},
        stationarity=(float(stat[0]), float(stat[1])),
        stationarity_norm=norm,
        primal={n: float(v) for n, v in zip(("c1", "c2_upper", "c3_upper", "c2_lower", "c3_lower"), values)},
        primal_violation=violation,
        complementary_slackness={n: float(v) for n, v in zip(NAMES, cs)},
        dual_min=float(lam.min()),
        eq40_residual=float(eq40_residual(problem, eb, ep)),
        active=active,
        satisfied=satisfied,
        tol=tol,
    )


def closed_form_tightness_gap(problem: OptimizationProblem) -> float:
    """Tight-constraint residual left by the published optimum formulas: ``G1**2``.

    Substituting ``eta_bat = G2/E_th`` and ``eta_ps = G1 E_th / G2`` gives
    ``G1**2 + G2 - G2``, so the formulas are tight only when ``G1 = 0``.
    """
    return problem.g1 ** 2
