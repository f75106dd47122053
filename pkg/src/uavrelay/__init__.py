"""Energy and flight-time model of a UAV relaying data between two ground networks.

The UAV hovers over a disaster-area network (NET1), collects a data packet from
every user, flies to a second network (NET2) and delivers to its base station.
Scenario ``B`` additionally harvests RF energy from the uplink signals with a
power-splitting SWIPT receiver.
"""
from .channel import ChannelModel, LinkBudget
from .config import Config, load_config, parse_config
from .deployment import Region, UserDeployment, sample_users, users_at
from .exceptions import UavRelayError
from .scenario import (CycleReport, MissionConfig, Scenario, max_feasible_altitude, max_users_served,
                       run_cycle)
from .swipt import HarvestAccounting, ReceiverArchitecture, SwiptConfig, battery_update
from .uav_power import EnergyLedger, FormulaVariant, UavAero, propulsion_power

__version__ = "0.1.0"
