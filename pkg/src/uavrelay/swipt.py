"""SWIPT receiver maths: power splitting (PS), time switching (TS) and the battery law."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .exceptions import InvalidParameterError


class ReceiverArchitecture(str, enum.Enum):
    """SWIPT receiver families.

    Only PS and TS carry formulas here. SR (separate receivers, one antenna per
    sink) and AS (antenna subsets switched between EH and ID) are listed for
    completeness and have no operations.
    """

    PS = "ps"
    TS = "ts"
    SR = "sr"
    AS = "as"


class HarvestAccounting(str, enum.Enum):
    # CYCLE: harvested power x cycle_duration, matching the optimizer's constants.
    # PHYSICAL: harvested power x that user's actual collection time.
    CYCLE = "cycle"
    PHYSICAL = "physical"


@dataclass(frozen=True)
class SwiptConfig:
    eta_ps: float = 0.3
    eta_bat: float = 0.6
    # None means "use this cycle's total mission energy" as the threshold.
    e_threshold: Optional[float] = None
    battery_initial: float = 3e8
    cycle_duration: float = 1.0
    accounting: HarvestAccounting = HarvestAccounting.CYCLE
    battery_capacity: Optional[float] = None

    def __post_init__(self):
        _check_fraction("eta_ps", self.eta_ps)
        _check_fraction("eta_bat", self.eta_bat)
        if self.e_threshold is not None and not (self.e_threshold >= 0):
            raise InvalidParameterError("e_threshold must be >= 0")
        if not (self.battery_initial >= 0 and math.isfinite(self.battery_initial)):
            raise InvalidParameterError("battery_initial must be finite and >= 0")
        if not self.cycle_duration > 0:
            raise InvalidParameterError("cycle_duration must be > 0")
        if self.battery_capacity is not None and self.battery_capacity < self.battery_initial:
            raise InvalidParameterError("battery_capacity is below battery_initial")
        object.__setattr__(self, "accounting", HarvestAccounting(self.accounting))


def _check_fraction(name, value):
    if not (0.0 <= value <= 1.0):
        raise InvalidParameterError(f"{name} must lie in [0, 1], got {value!r}")


def harvested_power_ps(eta_ps, received_power):
    _check_fraction("eta_ps", eta_ps)
    if np.any(np.asarray(received_power) < 0):
        raise InvalidParameterError("received power must be >= 0")
    return eta_ps * received_power


def id_power_ps(eta_ps, received_power):
    _check_fraction("eta_ps", eta_ps)
    if np.any(np.asarray(received_power) < 0):
        raise InvalidParameterError("received power must be >= 0")
    # received - harvested, so the two branches partition the input exactly
    return received_power - eta_ps * received_power


def ts_harvested_power(eta, source_power, channel_gain):
    """Power collected in the EH slot of a time-switching receiver."""
    return eta * source_power * channel_gain**2


def ts_id_rate(bandwidth, source_power, channel_gain, noise, interference=0.0):
    if noise <= 0:
        raise InvalidParameterError("noise power must be > 0")
    sinr = source_power * channel_gain**2 / (noise + interference)
    return bandwidth * math.log2(1.0 + sinr)


def ps_id_rate_generic(bandwidth, eta, source_power, channel_gain, n_sp, noise, interference=0.0):
    """Decoding rate of a PS receiver with signal-processing noise ``n_sp``."""
    if not (n_sp + noise > 0):
        raise InvalidParameterError("n_sp + noise must be > 0")
    _check_fraction("eta", eta)
    sinr = (1.0 - eta) * source_power * channel_gain**2 / (n_sp + noise + interference)
    return bandwidth * math.log2(1.0 + sinr)


def battery_update(config: SwiptConfig, harvested_energies, e_threshold: Optional[float] = None) -> float:
    """Battery level after one cycle: ``E_C + eta_bat * (sum(harvest) - E_th)``.

    ``e_threshold`` overrides ``config.e_threshold``; one of the two must be set.
    A negative return value means the battery is depleted and the mission is
    infeasible; it is reported, not raised.
    """
    harvested = np.asarray(harvested_energies, dtype=float)
    if np.any(harvested < 0):
        raise InvalidParameterError("harvested energies must be >= 0")
    threshold = config.e_threshold if e_threshold is None else e_threshold
    if threshold is None:
        raise InvalidParameterError("no threshold energy given")
    level = config.battery_initial + config.eta_bat * (float(np.sum(harvested)) - threshold)
    if config.battery_capacity is not None:
        level = min(level, config.battery_capacity)
    return level


def harvest_energies(config: SwiptConfig, received_powers, collection_times=None) -> np.ndarray:
    """Per-user harvested energy under the configured accounting mode."""
    power = harvested_power_ps(config.eta_ps, np.asarray(received_powers, dtype=float))
    if config.accounting is HarvestAccounting.PHYSICAL:
        if collection_times is None:
            raise InvalidParameterError("physical accounting needs collection times")
        return power * np.asarray(collection_times, dtype=float)
    return power * config.cycle_duration
