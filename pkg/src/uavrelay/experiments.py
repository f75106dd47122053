"""Seeded parameter sweeps and the figure tables.

Every table is plain CSV with a one-line header. Floats are written with
``repr`` so a re-run with the same configuration and seeds reproduces the file
byte for byte. A JSON sidecar carries the config hash, seeds and version.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .config import Config, valid_keys
from .exceptions import ConfigError, InvalidParameterError, UnreachableUserError
from .optimizer import build_problem, solve_analytic
from .scenario import (Scenario, expected_collection_time, max_feasible_altitude, max_users_served,
                       run_cycle)
from .swipt import SwiptConfig

DEFAULT_SEEDS = tuple(range(20))
FIGURES = (2, 3, 4, 5, 6, 7, 8)

# Per-cycle columns plus the two capacity searches.
CYCLE_COLUMNS = ("user_count", "total_uplink_rate", "total_harvest", "t_moving", "t_bs", "t_total",
                 "e_net1", "e_net2", "e_moving", "e_total", "battery_after", "feasible")
SEARCH_COLUMNS = ("max_users", "max_altitude")


def _version() -> str:
    from . import __version__

    return __version__


@dataclass(frozen=True)
class ExperimentSpec:
    name: str
    swept_parameter: str  # dotted config key, e.g. "mission.p_t_users"
    values: tuple
    seeds: tuple = DEFAULT_SEEDS
    scenarios: tuple = ("A",)
    columns: tuple = ("t_total",)

    def __post_init__(self):
        if not self.values:
            raise InvalidParameterError("sweep values must be nonempty")
        if not self.seeds:
            raise InvalidParameterError("need at least one seed")
        if self.swept_parameter not in valid_keys():
            raise ConfigError(f"unknown parameter {self.swept_parameter!r}; valid keys: {', '.join(valid_keys())}")
        bad = [c for c in self.columns if c not in CYCLE_COLUMNS + SEARCH_COLUMNS]
        if bad:
            raise InvalidParameterError(f"unknown columns {bad}; choose from {CYCLE_COLUMNS + SEARCH_COLUMNS}")
        for s in self.scenarios:
            Scenario(s)


@dataclass(frozen=True)
class ResultTable:
    headers: tuple
    rows: tuple
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        width = len(self.headers)
        for i, row in enumerate(self.rows):
            if len(row) != width:
                raise InvalidParameterError(f"row {i} has {len(row)} cells, header has {width}")

    def column(self, name: str) -> np.ndarray:
        j = self.headers.index(name)
        return np.array([row[j] for row in self.rows], dtype=float)

    def to_csv(self) -> str:
        lines = [",".join(self.headers)]
        lines += [",".join(_cell(v) for v in row) for row in self.rows]
        return "\n".join(lines) + "\n"

    def sidecar(self) -> str:
        return json.dumps(self.metadata, sort_keys=True, indent=2) + "\n"

    def write(self, path, sidecar: bool = True) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.to_csv())
        if sidecar:
            path.with_suffix(path.suffix + ".json").write_text(self.sidecar())
        return path


def _cell(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return repr(float(v))


def _metadata(name: str, config: Config, seeds, **extra) -> dict:
    meta = {"experiment": name, "config_hash": config.config_hash(), "seeds": list(seeds),
            "version": _version()}
    meta.update(extra)
    return meta


def _seeded(config: Config, seed: int) -> Config:
    return config.override(**{"mission.seed": seed})


def _metric(config: Config, scenario, seed: int, column: str) -> float:
    cfg = _seeded(config, seed)
    if column == "max_users":
        return float(max_users_served(cfg.mission, cfg.channel, cfg.aero, cfg.swipt, scenario,
                                      cfg.power_variant))
    if column == "max_altitude":
        h = max_feasible_altitude(cfg.mission, cfg.channel, cfg.aero, cfg.swipt, scenario=scenario,
                                  variant=cfg.power_variant)
        # no feasible altitude counts as 0 so the seed average stays monotone
        return 0.0 if h is None else h
    report = run_cycle(cfg.mission, cfg.channel, cfg.aero, cfg.swipt, scenario, variant=cfg.power_variant)
    return float(report.summary()[column])


def seed_mean(config: Config, scenario, seeds, column: str) -> float:
    return float(np.mean([_metric(config, scenario, s, column) for s in seeds]))


def run_sweep(spec: ExperimentSpec, config: Optional[Config] = None) -> ResultTable:
    """One row per swept value; one column per (output column, scenario), averaged over seeds."""
    config = config or Config()
    headers = [spec.swept_parameter] + [f"{c}_{s}" for c in spec.columns for s in spec.scenarios]
    rows = []
    for value in spec.values:
        cfg = config.override(**{spec.swept_parameter: value})
        row = [float(value)]
        for column in spec.columns:
            for s in spec.scenarios:
                row.append(seed_mean(cfg, s, spec.seeds, column))
        rows.append(tuple(row))
    meta = _metadata(spec.name, config, spec.seeds, swept_parameter=spec.swept_parameter,
                     values=[float(v) for v in spec.values], scenarios=list(spec.scenarios),
                     columns=list(spec.columns))
    return ResultTable(tuple(headers), tuple(rows), meta)


# ---------------------------------------------------------------- figures

# Settings layered on the configuration for each figure. Values the figure
# captions fix are marked; the rest are choices that put the swept effect
# inside the plotted range.
FIGURE_SETTINGS = {
    2: {"values": (1.0, 2.0, 3.0, 4.0, 5.0)},
    3: {"densities": (1e-5, 2e-5, 3e-5, 4e-5, 5e-5), "powers": (1.0, 3.0, 5.0)},
    4: {"values": (1.0, 2.0, 3.0, 4.0, 5.0), "overrides": {"mission.user_density": 3e-5}},
    5: {"values": (1e5, 2e5, 3e5, 4e5, 5e5), "altitudes": (500.0, 700.0, 900.0),
        "overrides": {"mission.p_t_users": 5.0, "mission.p_t_uav": 3.0}},
    7: {
        "densities": (1.75e-4, 2e-4, 2.5e-4, 3e-4, 4e-4, 5e-4, 6e-4, 8e-4),
        # Fixed threshold just above the stored energy (G2 < 0), so the optimal
        # splitting ratio (2 E_th - E_C) / G1 and with it the rate penalty fall
        # as density raises G1, while each extra user still adds collection time.
        "overrides": {"mission.altitude_net1": 700.0, "mission.data_threshold": 4e5,
                      "swipt.e_threshold": 1.2e-3, "swipt.battery_initial": 2e-4},
    },
    8: {"values": (1.0, 2.0, 3.0, 4.0, 5.0), "densities": (1e-5, 2e-5),
        "overrides": {"swipt.battery_initial": 1e9}},
}
FIGURE_SETTINGS[6] = FIGURE_SETTINGS[5]


def _figure2(config, seeds):
    rows = []
    for p in FIGURE_SETTINGS[2]["values"]:
        cfg = config.override(**{"mission.p_t_users": p})
        row = [p]
        for s in ("A", "B"):
            eta = cfg.swipt.eta_ps if s == "B" else 0.0
            first = run_cycle(cfg.mission, cfg.channel, cfg.aero, cfg.swipt, s, variant=cfg.power_variant)
            fixed = first.t_bs + first.ledger.t_moving
            row.append(fixed + expected_collection_time(cfg.mission, cfg.channel, eta))
            row.append(seed_mean(cfg, s, seeds, "t_total"))
        rows.append(tuple(row))
    return ("p_t_users", "t_total_theory_A", "t_total_sim_A", "t_total_theory_B", "t_total_sim_B"), rows


def _figure3(config, seeds):
    st = FIGURE_SETTINGS[3]
    headers = ("user_density",) + tuple(f"total_uplink_rate_pt{p:g}" for p in st["powers"])
    rows = []
    for lam in st["densities"]:
        row = [lam]
        for p in st["powers"]:
            cfg = config.override(**{"mission.user_density": lam, "mission.p_t_users": p})
            row.append(seed_mean(cfg, "A", seeds, "total_uplink_rate"))
        rows.append(tuple(row))
    return headers, rows


def _figure4(config, seeds):
    st = FIGURE_SETTINGS[4]
    base = config.override(**st["overrides"])
    rows = []
    for p in st["values"]:
        cfg = base.override(**{"mission.p_t_users": p})
        rows.append((p, seed_mean(cfg, "A", seeds, "max_users"), seed_mean(cfg, "B", seeds, "max_users")))
    return ("p_t_users", "max_users_A", "max_users_B"), rows


def _figure56(config, seeds, column):
    st = FIGURE_SETTINGS[5]
    base = config.override(**st["overrides"])
    headers = ("data_threshold",) + tuple(f"{column}_h{h:g}" for h in st["altitudes"])
    rows = []
    for d in st["values"]:
        row = [d]
        for h in st["altitudes"]:
            cfg = base.override(**{"mission.data_threshold": d, "mission.altitude_net1": h,
                                   "mission.altitude_net2": h})
            row.append(seed_mean(cfg, "B", seeds, column))
        rows.append(tuple(row))
    return headers, rows


def _figure7(config, seeds):
    st = FIGURE_SETTINGS[7]
    base = config.override(**st["overrides"])
    rows = []
    for lam in st["densities"]:
        cfg = base.override(**{"mission.user_density": lam})
        users, etas, times, ok = [], [], [], 0
        for seed in seeds:
            c = _seeded(cfg, seed)
            dep = c.mission.deploy()
            sol = solve_analytic(build_problem(c.mission, c.channel, dep, c.swipt, c.aero, c.power_variant))
            if not sol.feasible:
                continue
            swipt = SwiptConfig(**{**c.swipt.__dict__, "eta_ps": sol.eta_ps, "eta_bat": sol.eta_bat})
            try:
                rep = run_cycle(c.mission, c.channel, c.aero, swipt, "B", dep, c.power_variant)
            except UnreachableUserError:
                continue
            ok += int(rep.feasible)
            users.append(rep.user_count)
            etas.append(sol.eta_ps)
            times.append(rep.ledger.t_total)
        mean = (lambda xs: float(np.mean(xs)) if xs else math.nan)
        rows.append((lam, mean(users), mean(etas), mean(times), ok / len(seeds)))
    return ("user_density", "user_count", "eta_ps_opt", "t_total_B", "feasible_fraction"), rows


def _figure8(config, seeds):
    st = FIGURE_SETTINGS[8]
    base = config.override(**st["overrides"])
    headers = ("p_t_users",) + tuple(f"max_altitude_density{lam:g}" for lam in st["densities"])
    rows = []
    for p in st["values"]:
        row = [p]
        for lam in st["densities"]:
            cfg = base.override(**{"mission.p_t_users": p, "mission.user_density": lam})
            row.append(seed_mean(cfg, "B", seeds, "max_altitude"))
        rows.append(tuple(row))
    return headers, rows


def reproduce_figure(n: int, config: Optional[Config] = None, out_path=None,
                     seeds: Sequence[int] = DEFAULT_SEEDS) -> ResultTable:
    """Table behind figure ``n`` (2-8), averaged over ``seeds``; written to ``out_path`` if given."""
    if n not in FIGURES:
        raise InvalidParameterError(f"figure number must be one of {FIGURES}, got {n!r}")
    config = config or Config()
    seeds = tuple(int(s) for s in seeds)
    if n == 2:
        headers, rows = _figure2(config, seeds)
    elif n == 3:
        headers, rows = _figure3(config, seeds)
    elif n == 4:
        headers, rows = _figure4(config, seeds)
    elif n == 5:
        headers, rows = _figure56(config, seeds, "e_total")
    elif n == 6:
        headers, rows = _figure56(config, seeds, "t_total")
    elif n == 7:
        headers, rows = _figure7(config, seeds)
    else:
        headers, rows = _figure8(config, seeds)
    settings = {k: v for k, v in FIGURE_SETTINGS[n].items()}
    table = ResultTable(tuple(headers), tuple(tuple(r) for r in rows),
                        _metadata(f"figure{n}", config, seeds, settings=settings))
    if out_path is not None:
        table.write(out_path)
    return table
