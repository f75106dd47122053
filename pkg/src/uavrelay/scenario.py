"""Full relay cycle: collect from NET1, fly to NET2, deliver to the BS.

Scenario ``A`` has no harvester: the battery simply pays the cycle's energy.
Scenario ``B`` splits every uplink signal with a PS receiver and updates the
battery with ``E_C + eta_bat * (sum(harvest) - E_th)``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass, field, replace
from typing import Optional

import numpy as np

from . import channel as ch
from .channel import ChannelModel
from .deployment import Region, UserDeployment, sample_users
from .exceptions import InvalidParameterError, UnreachableUserError
from .swipt import SwiptConfig, battery_update, harvest_energies
from .uav_power import EnergyLedger, FormulaVariant, UavAero, mission_energy, moving_time


class Scenario(str, enum.Enum):
    A = "A"
    B = "B"


@dataclass(frozen=True)
class MissionConfig:
    altitude_net1: float = 800.0
    altitude_net2: float = 800.0
    inter_network_distance: float = 5000.0
    data_threshold: float = 4e5
    user_density: float = 1e-5
    region: Region = field(default_factory=Region)
    p_t_users: float = 5.0
    p_t_uav: float = 3.0
    seed: int = 0

    def __post_init__(self):
        if not (self.altitude_net1 > 0 and self.altitude_net2 > 0):
            raise InvalidParameterError("altitudes must be > 0")
        if self.data_threshold < 0:
            raise InvalidParameterError("data_threshold must be >= 0")
        if self.p_t_users < 0 or self.p_t_uav < 0:
            raise InvalidParameterError("transmit powers must be >= 0")
        if self.inter_network_distance < 0:
            raise InvalidParameterError("inter_network_distance must be >= 0")

    def deploy(self) -> UserDeployment:
        return sample_users(self.user_density, self.region, self.seed, self.altitude_net1)


@dataclass(frozen=True)
class UserRecord:
    slant_range: float
    rate: float
    collection_time: float
    harvested_energy: float


@dataclass(frozen=True)
class CycleReport:
    scenario: Scenario
    user_count: int
    per_user: tuple
    t_bs: float
    ledger: EnergyLedger
    battery_before: float
    battery_after: float
    feasible: bool
    # battery level after each phase: collect, move, deliver
    battery_trace: tuple = ()

    @property
    def total_uplink_rate(self) -> float:
        return float(sum(u.rate for u in self.per_user))

    @property
    def total_harvest(self) -> float:
        return float(sum(u.harvested_energy for u in self.per_user))

    def to_dict(self) -> dict:
        d = asdict(self)
        d["scenario"] = self.scenario.value
        d["per_user"] = [asdict(u) for u in self.per_user]
        d["battery_trace"] = list(self.battery_trace)
        return d

    def summary(self) -> dict:
        """Flat one-row view used by the CSV writers."""
        lg = self.ledger
        return {
            "scenario": self.scenario.value,
            "user_count": self.user_count,
            "total_uplink_rate": self.total_uplink_rate,
            "total_harvest": self.total_harvest,
            "t_moving": lg.t_moving,
            "t_bs": self.t_bs,
            "t_total": lg.t_total,
            "e_net1": lg.e_net1,
            "e_net2": lg.e_net2,
            "e_moving": lg.e_moving,
            "e_total": lg.e_total,
            "battery_before": self.battery_before,
            "battery_after": self.battery_after,
            "feasible": self.feasible,
        }


def run_cycle(mission: MissionConfig, channel: ChannelModel, aero: UavAero, swipt: Optional[SwiptConfig],
              scenario, deployment: Optional[UserDeployment] = None,
              variant: FormulaVariant = FormulaVariant.STANDARD) -> CycleReport:
    """Simulate one relay cycle.

    ``deployment`` defaults to the mission's seeded PPP draw; pass one explicitly
    to reuse the same users across configurations. Battery exhaustion is
    reported through ``feasible`` rather than raised; a user with zero rate
    raises :class:`UnreachableUserError`.
    """
    scenario = Scenario(scenario)
    if swipt is None:
        if scenario is Scenario.B:
            raise InvalidParameterError("scenario B needs a SwiptConfig")
        swipt = SwiptConfig()
    if deployment is None:
        deployment = mission.deploy()
    elif deployment.altitude != mission.altitude_net1:
        deployment = deployment.at_altitude(mission.altitude_net1)

    eta_ps = swipt.eta_ps if scenario is Scenario.B else 0.0
    _, p_r, _, rates = ch.uplink_budget(
        deployment.slant_ranges, mission.altitude_net1, mission.p_t_users, channel, eta_ps
    )
    times = np.atleast_1d(ch.collection_time(mission.data_threshold, rates)) if len(rates) else np.zeros(0)

    bs = ch.downlink_budget(mission.altitude_net2, mission.p_t_uav, channel)
    t_bs = ch.collection_time(mission.data_threshold, bs.rate)
    t_moving = moving_time(mission.inter_network_distance, aero.cruise_speed)
    ledger = mission_energy(times, t_bs, t_moving, aero, variant)

    if scenario is Scenario.B:
        harvest = harvest_energies(swipt, p_r, times)
    else:
        harvest = np.zeros(len(times))

    before = swipt.battery_initial
    trace = _battery_trace(scenario, swipt, ledger, harvest)
    if scenario is Scenario.B:
        e_th = ledger.e_total if swipt.e_threshold is None else swipt.e_threshold
        after = battery_update(swipt, harvest, e_th)
    else:
        after = before - ledger.e_total
    feasible = bool(before >= 0 and min(trace) >= 0 and after >= 0)

    per_user = tuple(
        UserRecord(float(r), float(z), float(t), float(h))
        for r, z, t, h in zip(deployment.slant_ranges, rates, times, harvest)
    )
    return CycleReport(scenario, len(per_user), per_user, float(t_bs), ledger, before, after, feasible,
                       tuple(trace))


def _battery_trace(scenario, swipt, ledger, harvest):
    """Battery after collect, move and deliver.

    Scenario B credits the harvest at the end of collection and charges the
    threshold energy phase by phase in proportion to each phase's share of the
    cycle energy, all scaled by the battery efficiency. The last entry equals
    the closed-form battery law up to rounding.
    """
    level = swipt.battery_initial
    costs = (ledger.e_net1, ledger.e_moving, ledger.e_net2)
    if scenario is Scenario.A:
        out = []
        for c in costs:
            level -= c
            out.append(level)
        return out
    e_th = ledger.e_total if swipt.e_threshold is None else swipt.e_threshold
    shares = [c / ledger.e_total if ledger.e_total > 0 else 1.0 / 3 for c in costs]
    credit = float(np.sum(harvest))
    out = []
    for i, share in enumerate(shares):
        level += swipt.eta_bat * ((credit if i == 0 else 0.0) - share * e_th)
        if swipt.battery_capacity is not None:
            level = min(level, swipt.battery_capacity)
        out.append(level)
    return out


def _feasible_with(mission, channel, aero, swipt, scenario, deployment, variant) -> bool:
    try:
        return run_cycle(mission, channel, aero, swipt, scenario, deployment, variant).feasible
    except UnreachableUserError:
        return False


def max_users_served(mission: MissionConfig, channel: ChannelModel, aero: UavAero, swipt: SwiptConfig,
                     scenario, variant: FormulaVariant = FormulaVariant.STANDARD,
                     deployment: Optional[UserDeployment] = None) -> int:
    """Largest N such that serving the N nearest users is feasible.

    Users come from the mission's seeded deployment, ordered by slant range.
    Feasibility is monotone in N under this prefix rule, so a binary search is
    enough. Returns 0 when even the empty mission is infeasible.
    """
    deployment = (deployment or mission.deploy()).sorted_by_range()
    lo, hi = 0, len(deployment)
    if not _feasible_with(mission, channel, aero, swipt, scenario, deployment.prefix(0), variant):
        return 0
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if _feasible_with(mission, channel, aero, swipt, scenario, deployment.prefix(mid), variant):
            lo = mid
        else:
            hi = mid - 1
    return lo


def max_feasible_altitude(mission: MissionConfig, channel: ChannelModel, aero: UavAero, swipt: SwiptConfig,
                          bounds=(100.0, 3000.0), tol: float = 1.0, scenario=Scenario.B,
                          variant: FormulaVariant = FormulaVariant.STANDARD,
                          deployment: Optional[UserDeployment] = None) -> Optional[float]:
    """Highest NET1 hover altitude (within ``tol``) at which the whole cycle is feasible.

    The ground positions are fixed by the mission seed; only the hover altitude
    moves. Returns ``None`` when the lower bound is already infeasible.
    """
    lo, hi = float(bounds[0]), float(bounds[1])
    if not (0 < lo <= hi) or tol <= 0:
        raise InvalidParameterError("need 0 < lower <= upper and tol > 0")
    ground = deployment or mission.deploy()

    def ok(h):
        m = replace(mission, altitude_net1=h)
        return _feasible_with(m, channel, aero, swipt, scenario, ground.at_altitude(h), variant)

    if not ok(lo):
        return None
    if ok(hi):
        return hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if ok(mid):
            lo = mid
        else:
            hi = mid
    return lo


def reports_equal(a: CycleReport, b: CycleReport, ignore=("scenario",)) -> list:
    """Names of fields that differ between two reports (exact comparison)."""
    da, db = a.to_dict(), b.to_dict()
    return [k for k in da if k not in ignore and da[k] != db[k]]


def expected_collection_time(mission: MissionConfig, channel: ChannelModel, eta_ps: float = 0.0) -> float:
    """Mean total NET1 collection time over the PPP, by Campbell's formula.

    E[sum_k T_k] = density * integral over the disc of T(r) dA, evaluated with
    adaptive quadrature.
    """
    from scipy.integrate import quad

    h = mission.altitude_net1

    def t_of(d):
        _, _, _, rate = ch.uplink_budget(np.array([math.hypot(h, d)]), h, mission.p_t_users, channel, eta_ps)
        return float(ch.collection_time(mission.data_threshold, rate[0])) * 2.0 * math.pi * d

    val, _ = quad(t_of, 0.0, mission.region.radius, limit=200)
    return mission.user_density * val
