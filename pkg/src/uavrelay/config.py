"""Configuration: defaults, flat ``section.key = value`` files, hashing.

File format, one assignment per line::

    # comment
    mission.altitude_net1 = 700
    swipt.e_threshold = auto      # "auto": use the cycle's own total energy
    uav.power_variant = standard

Sections are ``mission``, ``channel``, ``uav`` and ``swipt``. Unknown keys are
rejected. The rotary-wing constants, path-loss exponent, both noise powers and
the 800 m hover altitude default to the published simulation table; everything
else the source leaves unspecified has an invented default listed in
:data:`INVENTED_DEFAULTS`.
"""
from __future__ import annotations

import dataclasses
import enum
import hashlib
import json
import math
import os
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Optional

from .channel import ChannelModel
from .deployment import Region
from .exceptions import ConfigError, UavRelayError
from .scenario import MissionConfig
from .swipt import HarvestAccounting, SwiptConfig
from .uav_power import FormulaVariant, UavAero

ENV_VAR = "UAVRELAY_CONFIG"

# Values taken from the published simulation-parameter table.
TABLE2 = {
    "uav.tip_speed": 120.0,
    "uav.cruise_speed": 70.0,
    "uav.fuselage_drag_ratio": 0.6,
    "uav.air_density": 1.225,
    "channel.path_loss_exponent": 2.0,
    "uav.rotor_solidity": 0.05,
    "uav.rotor_disc_area": 0.503,
    "uav.rotor_radius": 0.4,
    "uav.induced_power_factor": 0.1,
    "uav.blade_angular_velocity": 13.0,
    "uav.profile_drag_coeff": 0.012,
    "uav.weight": 20.0,
    "channel.noise_downlink": 1.0,  # 0 dBW
    "mission.altitude_net1": 800.0,
    "channel.noise_uplink": 1.0,  # 0 dBW
}

# Keys with no published value; strict loading insists they are given explicitly.
INVENTED_DEFAULTS = (
    "mission.inter_network_distance",
    "swipt.battery_initial",
    "swipt.e_threshold",
    "channel.bandwidth",
    "channel.los_b",
    "channel.los_c",
)

_SECTIONS = {"mission": MissionConfig, "channel": ChannelModel, "uav": UavAero, "swipt": SwiptConfig}


@dataclass(frozen=True)
class Config:
    mission: MissionConfig = field(default_factory=MissionConfig)
    channel: ChannelModel = field(default_factory=ChannelModel)
    aero: UavAero = field(default_factory=UavAero)
    swipt: SwiptConfig = field(default_factory=SwiptConfig)
    power_variant: FormulaVariant = FormulaVariant.STANDARD

    def to_flat(self) -> dict:
        out = {}
        for f in fields(self.mission):
            if f.name == "region":
                out["mission.region_radius"] = self.mission.region.radius
            else:
                out[f"mission.{f.name}"] = getattr(self.mission, f.name)
        for section, obj in (("channel", self.channel), ("uav", self.aero), ("swipt", self.swipt)):
            for f in fields(obj):
                v = getattr(obj, f.name)
                out[f"{section}.{f.name}"] = v.value if isinstance(v, HarvestAccounting) else v
        out["uav.power_variant"] = self.power_variant.value
        return out

    def config_hash(self) -> str:
        blob = json.dumps(self.to_flat(), sort_keys=True, default=repr).encode()
        return hashlib.sha256(blob).hexdigest()[:16]

    def override(self, **dotted) -> "Config":
        """Copy with ``section.key`` overrides, e.g. ``cfg.override(**{"mission.seed": 3})``."""
        flat = self.to_flat()
        for key, value in dotted.items():
            if key not in flat:
                raise ConfigError(_unknown_key_message(key))
            if isinstance(value, enum.Enum):
                value = value.value
            # route through the text parser so 700 and 700.0 hash identically
            flat[key] = None if value is None else _coerce(key, str(value), flat[key])
        return from_flat(flat)


def valid_keys() -> list:
    return sorted(Config().to_flat())


def _unknown_key_message(key: str) -> str:
    return f"unknown key {key!r}; valid keys: {', '.join(valid_keys())}"


def _coerce(key: str, raw: str, default):
    text = raw.strip()
    low = text.lower()
    if key in ("swipt.e_threshold", "swipt.battery_capacity"):
        if low in ("auto", "none", ""):
            return None
        return float(text)
    if key == "uav.power_variant":
        return FormulaVariant(low).value
    if key == "swipt.accounting":
        return HarvestAccounting(low).value
    if key == "mission.seed":
        return int(text)
    value = float(text)
    if not math.isfinite(value):
        raise ValueError("value must be finite")
    return value


def from_flat(flat: dict) -> Config:
    try:
        sections = {name: {} for name in _SECTIONS}
        variant = FormulaVariant.STANDARD
        for key, value in flat.items():
            section, _, name = key.partition(".")
            if key == "uav.power_variant":
                variant = FormulaVariant(value)
            elif key == "mission.region_radius":
                sections["mission"]["region"] = Region(float(value))
            else:
                sections[section][name] = value
        return Config(
            mission=MissionConfig(**sections["mission"]),
            channel=ChannelModel(**sections["channel"]),
            aero=UavAero(**sections["uav"]),
            swipt=SwiptConfig(**sections["swipt"]),
            power_variant=variant,
        )
    except UavRelayError as exc:
        raise ConfigError(str(exc)) from exc


def parse_config(text: str, source: str = "<string>", strict: bool = False) -> Config:
    """Parse override text on top of the defaults.

    With ``strict=True`` every key in :data:`INVENTED_DEFAULTS` must be given
    explicitly, since the shipped value for it is invented rather than published.
    """
    flat = Config().to_flat()
    seen = set()
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ConfigError(f"{source}:{lineno}: expected 'section.key = value', got {line.strip()!r}")
        key, _, raw = (s.strip() for s in body.partition("="))
        if key not in flat:
            raise ConfigError(f"{source}:{lineno}: {_unknown_key_message(key)}")
        try:
            flat[key] = _coerce(key, raw, flat[key])
        except ValueError as exc:
            raise ConfigError(f"{source}:{lineno}: bad value for {key}: {raw!r} ({exc})") from None
        seen.add(key)
    if strict:
        missing = [k for k in INVENTED_DEFAULTS if k not in seen]
        if missing:
            raise ConfigError(
                f"{source}: missing {', '.join(missing)}; these have no published value and strict "
                "loading does not fall back to the invented defaults"
            )
    return from_flat(flat)


def load_config(path: Optional[os.PathLike] = None, strict: bool = False) -> Config:
    """Defaults merged with the file at ``path`` (or ``$UAVRELAY_CONFIG`` when unset)."""
    if path is None:
        path = os.environ.get(ENV_VAR)
        if not path:
            return Config()
    p = Path(path)
    if not p.exists():
        raise ConfigError(f"config file not found: {p}")
    return parse_config(p.read_text(), source=str(p), strict=strict)


def dump_config(config: Config) -> str:
    lines = []
    for key, value in config.to_flat().items():
        if value is None:
            value = "auto" if key == "swipt.e_threshold" else "none"
        lines.append(f"{key} = {value}")
    return "\n".join(lines) + "\n"


def with_mission(config: Config, **changes) -> Config:
    return dataclasses.replace(config, mission=replace(config.mission, **changes))


def with_swipt(config: Config, **changes) -> Config:
    return dataclasses.replace(config, swipt=replace(config.swipt, **changes))
