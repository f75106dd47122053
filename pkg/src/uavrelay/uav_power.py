"""Rotary-wing propulsion power and per-cycle energy/time bookkeeping."""
from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass

import numpy as np

from .exceptions import InvalidParameterError, ModelDomainError


class FormulaVariant(str, enum.Enum):
    """Which induced-power term to use.

    ``STANDARD`` uses ``v**4 / (4 v0**4)`` inside the inner root. ``PAPER_LITERAL``
    uses ``v**4 / (4 v0**2)`` as typeset in the source, which is not dimensionally
    consistent and can drive the outer radicand negative at high speed.
    """

    STANDARD = "standard"
    PAPER_LITERAL = "paper_literal"


@dataclass(frozen=True)
class UavAero:
    tip_speed: float = 120.0  # U_tip, m/s
    fuselage_drag_ratio: float = 0.6  # d0
    air_density: float = 1.225  # rho, kg/m^3
    rotor_solidity: float = 0.05  # s
    rotor_disc_area: float = 0.503  # A, m^2
    rotor_radius: float = 0.4  # R, m
    induced_power_factor: float = 0.1  # k
    blade_angular_velocity: float = 13.0  # Omega, rad/s; gives a tiny P0 (~6.5 mW)
    profile_drag_coeff: float = 0.012  # delta
    weight: float = 20.0  # N
    cruise_speed: float = 70.0  # m/s

    def __post_init__(self):
        for name, value in asdict(self).items():
            if not math.isfinite(value):
                raise InvalidParameterError(f"{name} must be finite")
            if name == "induced_power_factor":
                if value < 0:
                    raise InvalidParameterError("induced_power_factor must be >= 0")
            elif value <= 0:
                raise InvalidParameterError(f"{name} must be > 0")

    @property
    def hover_induced_velocity(self) -> float:
        """v0 = sqrt(W / (2 rho A))."""
        return math.sqrt(self.weight / (2.0 * self.air_density * self.rotor_disc_area))


def blade_profile_power(aero: UavAero) -> float:
    a = aero
    return (a.profile_drag_coeff / 8.0) * a.air_density * a.rotor_solidity * a.rotor_disc_area \
        * a.blade_angular_velocity**3 * a.rotor_radius**3


def induced_hover_power(aero: UavAero) -> float:
    a = aero
    return (1.0 + a.induced_power_factor) * a.weight**1.5 / math.sqrt(2.0 * a.air_density * a.rotor_disc_area)


def propulsion_power(v, aero: UavAero, variant: FormulaVariant = FormulaVariant.STANDARD):
    """Propulsion power P(v) in W at forward speed ``v`` (scalar or array)."""
    v = np.asarray(v, dtype=float)
    if np.any(v < 0):
        raise InvalidParameterError("speed must be >= 0")
    variant = FormulaVariant(variant)
    v0 = aero.hover_induced_velocity
    p0 = blade_profile_power(aero)
    pi = induced_hover_power(aero)

    v2 = v * v
    denom = 4.0 * v0**4 if variant is FormulaVariant.STANDARD else 4.0 * v0**2
    radicand = np.sqrt(1.0 + v2 * v2 / denom) - v2 / (2.0 * v0**2)
    if np.any(radicand < 0):
        raise ModelDomainError(
            f"induced-power radicand is negative under the {variant.value} variant "
            f"(max speed {float(np.max(v)):.3g} m/s)"
        )
    profile = p0 * (1.0 + 3.0 * v2 / aero.tip_speed**2)
    induced = pi * np.sqrt(radicand)
    parasite = 0.5 * aero.fuselage_drag_ratio * aero.air_density * aero.rotor_solidity \
        * aero.rotor_disc_area * v2 * v
    out = profile + induced + parasite
    return out if out.ndim else float(out)


def power_terms(v: float, aero: UavAero, variant: FormulaVariant = FormulaVariant.STANDARD) -> dict:
    """Blade-profile, induced and parasite contributions to P(v)."""
    total = propulsion_power(v, aero, variant)
    profile = blade_profile_power(aero) * (1.0 + 3.0 * v * v / aero.tip_speed**2)
    parasite = 0.5 * aero.fuselage_drag_ratio * aero.air_density * aero.rotor_solidity \
        * aero.rotor_disc_area * v**3
    return {"profile": profile, "induced": total - profile - parasite, "parasite": parasite, "total": total}


def moving_time(distance: float, cruise_speed: float) -> float:
    if cruise_speed <= 0:
        raise InvalidParameterError("cruise speed must be > 0")
    if distance < 0:
        raise InvalidParameterError("distance must be >= 0")
    return distance / cruise_speed


@dataclass(frozen=True)
class EnergyLedger:
    e_net1: float
    e_net2: float
    e_moving: float
    e_total: float
    t_moving: float
    t_total: float


def mission_energy(collection_times, t_bs: float, t_moving: float, aero: UavAero,
                   variant: FormulaVariant = FormulaVariant.STANDARD) -> EnergyLedger:
    """Energy and time of one relay cycle.

    The UAV hovers (P(0)) while collecting from NET1 users and while delivering
    to the NET2 base station, and cruises at ``aero.cruise_speed`` in between.
    """
    times = np.asarray(collection_times, dtype=float)
    if np.any(times < 0) or t_bs < 0 or t_moving < 0:
        raise InvalidParameterError("times must be >= 0")
    hover = propulsion_power(0.0, aero, variant)
    t_collect = float(np.sum(times))
    e_net1 = hover * t_collect
    e_net2 = hover * t_bs
    e_moving = propulsion_power(aero.cruise_speed, aero, variant) * t_moving if t_moving > 0 else 0.0
    return EnergyLedger(
        e_net1=e_net1,
        e_net2=e_net2,
        e_moving=e_moving,
        e_total=e_net1 + e_net2 + e_moving,
        t_moving=t_moving,
        t_total=t_moving + t_bs + t_collect,
    )
