"""The flight-time program in its final linear form.

After the reductions (see :mod:`.reduction`) the program is

    maximise   sum_k (1 - eta_ps) * g_k / n1
    subject to eta_ps * eta_bat * G1 - E_th * eta_bat + G2 >= 0     (c1)
               0 <= eta_bat <= 1                                     (c2)
               0 <= eta_ps  <= 1                                     (c3)

with g_k = R_k**-alpha, G1 = P_T * sum_k g_k and G2 = E_C - E_th.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..channel import ChannelModel
from ..deployment import UserDeployment
from ..exceptions import InvalidProblemError
from ..swipt import SwiptConfig
from ..uav_power import FormulaVariant, UavAero


@dataclass(frozen=True)
class OptimizationProblem:
    g1: float
    g2: float
    e_threshold: float
    per_user_gains: tuple
    noise_uplink: float = 1.0
    p_t_users: float = 1.0

    def __post_init__(self):
        if self.g1 < 0:
            raise InvalidProblemError("G1 must be >= 0")
        if not self.per_user_gains or any(g <= 0 for g in self.per_user_gains):
            raise InvalidProblemError("need at least one user with positive gain")

    @property
    def battery_initial(self) -> float:
        return self.g2 + self.e_threshold

    @property
    def gain_sum(self) -> float:
        return float(np.sum(self.per_user_gains))

    @property
    def scale(self) -> float:
        """Magnitude used to make feasibility tolerances relative."""
        return max(1.0, abs(self.g1), abs(self.g2), abs(self.e_threshold))

    @classmethod
    def from_constants(cls, g1: float, e_threshold: float, battery_initial: float,
                       gains=(1.0,), noise_uplink: float = 1.0) -> "OptimizationProblem":
        """Synthetic problem with prescribed G1, E_th and E_C.

        The user transmit power is chosen so that ``p_t * sum(gains) == g1``.
        """
        gains = tuple(float(g) for g in gains)
        p_t = g1 / sum(gains)
        return cls(g1=float(g1), g2=float(battery_initial - e_threshold), e_threshold=float(e_threshold),
                   per_user_gains=gains, noise_uplink=noise_uplink, p_t_users=p_t)


def build_problem(mission, channel: ChannelModel, deployment: UserDeployment, swipt: SwiptConfig,
                  aero: Optional[UavAero] = None,
                  variant: FormulaVariant = FormulaVariant.STANDARD) -> OptimizationProblem:
    """Constants of the linear program for one deployment.

    The threshold energy is ``swipt.e_threshold`` when set, otherwise the total
    cycle energy of the same deployment without power splitting.
    """
    if len(deployment) == 0:
        raise InvalidProblemError("empty deployment: nothing to optimise")
    gains = np.power(np.asarray(deployment.slant_ranges, dtype=float), -channel.path_loss_exponent)
    e_th = swipt.e_threshold
    if e_th is None:
        from ..scenario import Scenario, run_cycle

        report = run_cycle(mission, channel, aero or UavAero(), swipt, Scenario.A, deployment, variant)
        e_th = report.ledger.e_total
    return OptimizationProblem(
        g1=float(mission.p_t_users * np.sum(gains)),
        g2=float(swipt.battery_initial - e_th),
        e_threshold=float(e_th),
        per_user_gains=tuple(float(g) for g in gains),
        noise_uplink=channel.noise_uplink,
        p_t_users=mission.p_t_users,
    )


def objective_eq30(problem: OptimizationProblem, eta_ps):
    """Linear objective; does not depend on ``eta_bat``."""
    out = (1.0 - np.asarray(eta_ps, dtype=float)) * problem.gain_sum / problem.noise_uplink
    return out if out.ndim else float(out)


def constraint_c1(problem: OptimizationProblem, eta_bat, eta_ps):
    """Residual of the battery constraint; feasible iff >= 0."""
    return eta_ps * eta_bat * problem.g1 - problem.e_threshold * eta_bat + problem.g2


def constraint_residuals(problem: OptimizationProblem, eta_bat: float, eta_ps: float) -> dict:
    """All constraints as ``>= 0`` residuals, box bounds split in lower/upper."""
    return {
        "c1": constraint_c1(problem, eta_bat, eta_ps),
        "c2_upper": 1.0 - eta_bat,
        "c3_upper": 1.0 - eta_ps,
        "c2_lower": eta_bat,
        "c3_lower": eta_ps,
    }


def is_feasible(problem: OptimizationProblem, eta_bat: float, eta_ps: float, tol: float = 1e-9) -> bool:
    res = constraint_residuals(problem, eta_bat, eta_ps)
    c1_tol = tol * problem.scale
    return res["c1"] >= -c1_tol and all(res[k] >= -tol for k in res if k != "c1")
