"""The chain of program forms leading from "minimise total flight time" to the linear program.

Each :class:`ReductionStep` carries an evaluable objective and battery
constraint over ``(eta_bat, eta_ps)`` together with the substitutions and
approximations that produced it, so every link can be checked numerically.
Labels follow the numbering used by the original derivation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .. import channel as ch
from ..swipt import HarvestAccounting
from ..uav_power import FormulaVariant, UavAero, moving_time
from .problem import build_problem

LOS_FACTOR_ONE = "los_factor_one"  # (P_LOS + eta P_NLOS) replaced by 1
LOW_SNR_LINEAR = "low_snr_linearisation"  # 1 / (W log2(1 + g)) replaced by 1 / g, up to ln2 / W
AFFINE_DROP = "positive_affine_drop"  # additive constants / positive factors removed (same argmin)
RECIPROCAL_TO_SUM = "reciprocal_to_sum"  # min sum 1/g  ->  max sum g (orderings reverse)
CONSTANT_UAV_POWER = "constant_uav_power"  # UAV transmit term dropped, objective divided by P_T


@dataclass(frozen=True)
class ReductionStep:
    label: str
    sense: str  # "min" or "max"
    objective: Callable[[float, float], float]
    constraint: Callable[[float, float], float]
    substitutions: str
    approximations: tuple = ()


@dataclass(frozen=True)
class ReductionTrace:
    steps: tuple
    constants: dict

    def __getitem__(self, label: str) -> ReductionStep:
        for s in self.steps:
            if s.label == label:
                return s
        raise KeyError(label)

    @property
    def labels(self) -> list:
        return [s.label for s in self.steps]


def reduction_trace(mission, channel: ch.ChannelModel, deployment, swipt,
                    aero: Optional[UavAero] = None,
                    variant: FormulaVariant = FormulaVariant.STANDARD) -> ReductionTrace:
    """Build every intermediate form for one deployment.

    Harvested energy per user is ``eta_ps * P_R * cycle_duration`` throughout,
    i.e. the cycle accounting mode, regardless of ``swipt.accounting``.
    """
    aero = aero or UavAero()
    problem = build_problem(mission, channel, deployment, swipt, aero, variant)
    e_c, e_th = swipt.battery_initial, problem.e_threshold
    tau = swipt.cycle_duration
    h, d_th = mission.altitude_net1, mission.data_threshold
    w, n1, n2 = channel.bandwidth, channel.noise_uplink, channel.noise_downlink
    alpha = channel.path_loss_exponent

    ranges = np.asarray(deployment.slant_ranges, dtype=float)
    _, p_r, _, _ = ch.uplink_budget(ranges, h, mission.p_t_users, channel, 0.0)
    gains = ranges ** -alpha
    bs = ch.downlink_budget(mission.altitude_net2, mission.p_t_uav, channel)
    gamma_bs = bs.snr
    gamma_bs_los1 = mission.p_t_uav * mission.altitude_net2 ** -alpha / n2
    t_moving = moving_time(mission.inter_network_distance, aero.cruise_speed)

    def gamma_k(eta_ps):
        return (1.0 - eta_ps) * p_r / n1

    def rate(g):
        return w * np.log1p(g) / math.log(2.0)

    def flight_time(eb, ep):
        return t_moving + d_th / rate(gamma_bs) + float(np.sum(d_th / rate(gamma_k(ep))))

    def c1_battery_after(eb, ep):
        # E_C+ - E_th with E_C+ = E_C + eta_bat (sum EH - E_th)
        harvest = float(np.sum(ep * p_r * tau))
        return e_c + eb * (harvest - e_th) - e_th

    def c1_harvest(eb, ep):
        return e_c + eb * float(np.sum(ep * p_r * tau)) - (1.0 + eb) * e_th

    def c1_received(eb, ep):
        return e_c + ep * eb * float(np.sum(p_r)) * tau - (1.0 + eb) * e_th

    def c1_geometric(eb, ep):
        return e_c + mission.p_t_users * ep * eb * float(np.sum(gains)) * tau - (1.0 + eb) * e_th

    def inv_rates(eb, ep):
        return 1.0 / rate(gamma_bs) + float(np.sum(1.0 / rate(gamma_k(ep))))

    def inv_snrs(eb, ep):
        return 1.0 / gamma_bs + float(np.sum(1.0 / gamma_k(ep)))

    def sum_snrs(eb, ep):
        return gamma_bs + float(np.sum(gamma_k(ep)))

    def sum_snrs_los1(eb, ep):
        return gamma_bs_los1 + float(np.sum((1.0 - ep) * mission.p_t_users * gains / n1))

    def linear_objective(eb, ep):
        return float(np.sum((1.0 - ep) * gains / n1))

    def c1_linear(eb, ep):
        return ep * eb * problem.g1 * tau - e_th * eb + problem.g2

    steps = (
        ReductionStep("Eq26", "min", flight_time, c1_battery_after,
                      "total flight time; battery after the cycle must cover the threshold energy"),
        ReductionStep("Eq42", "min", flight_time, c1_harvest,
                      "battery law and total-time sum substituted"),
        ReductionStep("Eq43", "min", inv_rates, c1_received,
                      "per-user and BS times D/rate substituted; harvest = eta_ps * P_R",
                      (AFFINE_DROP,)),
        ReductionStep("Eq44", "min", inv_rates, c1_geometric,
                      "rates written as W log2(1 + SNR); P_R = P_T R^-alpha",
                      (LOS_FACTOR_ONE,)),
        ReductionStep("Eq45", "min", inv_snrs, c1_geometric,
                      "log2(1 + SNR) linearised", (LOW_SNR_LINEAR, LOS_FACTOR_ONE)),
        ReductionStep("Eq28", "max", sum_snrs, c1_geometric,
                      "reciprocal sum replaced by SNR sum", (RECIPROCAL_TO_SUM, LOS_FACTOR_ONE)),
        ReductionStep("Eq29", "max", sum_snrs_los1, c1_geometric,
                      "SNRs expanded with P_T R^-alpha / n", (LOS_FACTOR_ONE,)),
        ReductionStep("Eq30", "max", linear_objective, c1_linear,
                      "G1 = P_T sum R^-alpha, G2 = E_C - E_th", (CONSTANT_UAV_POWER, LOS_FACTOR_ONE)),
    )
    constants = {
        "t_moving": t_moving,
        "data_threshold": d_th,
        "bandwidth": w,
        "gamma_bs": gamma_bs,
        "gamma_bs_los1": gamma_bs_los1,
        "p_t_users": mission.p_t_users,
        "g1": problem.g1,
        "g2": problem.g2,
        "e_threshold": e_th,
        "battery_initial": e_c,
        "cycle_duration": tau,
        "accounting_ignored": swipt.accounting is HarvestAccounting.PHYSICAL,
    }
    return ReductionTrace(steps, constants)
