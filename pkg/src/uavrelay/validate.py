"""Fast invariant suite behind ``uavrelay validate``.

Each check returns ``(name, passed, detail)``. The checks use small samples so
the whole suite runs in a couple of seconds; the test suite covers the same
ground at full size.
"""
from __future__ import annotations

import math
from dataclasses import replace

import numpy as np

from . import channel as ch
from .config import Config
from .optimizer import (OptimizationProblem, agree_within_lattice, closed_form_tightness_gap,
                        eq40_residual, solve_analytic, solve_grid, solve_paper_closed_form)
from .scenario import Scenario, run_cycle
from .swipt import harvested_power_ps, id_power_ps
from .uav_power import blade_profile_power, induced_hover_power, power_terms, propulsion_power


def check_hover_power(cfg: Config):
    p0 = float(propulsion_power(0.0, cfg.aero, cfg.power_variant))
    parts = blade_profile_power(cfg.aero) + induced_hover_power(cfg.aero)
    return math.isclose(p0, parts, rel_tol=1e-12), f"P(0)={p0:.6f} W"


def check_cruise_parasite(cfg: Config):
    t = power_terms(cfg.aero.cruise_speed, cfg.aero, cfg.power_variant)
    share = t["parasite"] / t["total"]
    return share > 0.5, f"P(v)={t['total']:.2f} W, parasite share {share:.3f}"


def check_conservation(cfg: Config, rng, n=2000):
    worst = 0.0
    for eta, p in zip(rng.uniform(0, 1, n), rng.uniform(0, 100, n)):
        worst = max(worst, abs(harvested_power_ps(eta, p) + id_power_ps(eta, p) - p) / p)
    return worst <= np.finfo(float).eps, f"max relative error {worst:.3g}"


def check_los_monotone(cfg: Config):
    p = ch.los_probability(np.linspace(0, 90, 1000), cfg.channel)
    ok = bool(np.all((p >= 0) & (p <= 1)) and np.all(np.diff(p) >= 0))
    return ok, f"range [{p.min():.4f}, {p.max():.4f}]"


def check_rate_ordering(cfg: Config, rng):
    r = rng.uniform(cfg.mission.altitude_net1, 2000, 500)
    _, _, _, ra = ch.uplink_budget(r, cfg.mission.altitude_net1, cfg.mission.p_t_users, cfg.channel, 0.0)
    _, _, _, rb = ch.uplink_budget(r, cfg.mission.altitude_net1, cfg.mission.p_t_users, cfg.channel, 0.3)
    return bool(np.all(rb < ra)), "scenario-B rate below scenario-A rate at eta_ps=0.3"


def check_optimizer_oracle(cfg: Config, rng, n=50, resolution=1001):
    bad = 0
    for _ in range(n):
        prob = OptimizationProblem.from_constants(rng.uniform(0, 5), rng.uniform(1e-3, 2), rng.uniform(0, 3))
        if not agree_within_lattice(solve_analytic(prob), solve_grid(prob, resolution), resolution):
            bad += 1
    return bad == 0, f"{bad}/{n} disagreements at resolution {resolution}"


def check_closed_form_gap(cfg: Config, rng, n=50):
    worst = 0.0
    for _ in range(n):
        prob = OptimizationProblem.from_constants(rng.uniform(0.1, 5), rng.uniform(0.1, 2), rng.uniform(0, 3))
        if prob.g2 == 0:
            continue
        sol = solve_paper_closed_form(prob)
        worst = max(worst, abs(eq40_residual(prob, sol.eta_bat, sol.eta_ps) - closed_form_tightness_gap(prob)))
    return worst <= 1e-9, f"max |residual - G1^2| = {worst:.3g}"


def check_battery_law(cfg: Config):
    rep = run_cycle(cfg.mission, cfg.channel, cfg.aero, cfg.swipt, Scenario.B, variant=cfg.power_variant)
    e_th = rep.ledger.e_total if cfg.swipt.e_threshold is None else cfg.swipt.e_threshold
    expect = cfg.swipt.eta_bat * (rep.total_harvest - e_th)
    got = rep.battery_after - rep.battery_before
    return math.isclose(got, expect, rel_tol=1e-12, abs_tol=1e-9), f"delta {got:.6g} J"


def check_determinism(cfg: Config):
    a = run_cycle(cfg.mission, cfg.channel, cfg.aero, cfg.swipt, Scenario.B, variant=cfg.power_variant)
    b = run_cycle(cfg.mission, cfg.channel, cfg.aero, cfg.swipt, Scenario.B, variant=cfg.power_variant)
    return a.to_dict() == b.to_dict(), "two identical runs compared"


def check_time_in_data(cfg: Config):
    dep = cfg.mission.deploy()
    times = []
    for d in (1e5, 2e5, 4e5):
        m = replace(cfg.mission, data_threshold=d)
        times.append(run_cycle(m, cfg.channel, cfg.aero, cfg.swipt, Scenario.B, dep, cfg.power_variant).ledger.t_total)
    return bool(np.all(np.diff(times) > 0)), "t_total over D_th = 1e5, 2e5, 4e5"


def run_all(cfg: Config = None, seed: int = 0) -> list:
    cfg = cfg or Config()
    rng = np.random.default_rng(seed)
    checks = [
        ("hover_power", lambda: check_hover_power(cfg)),
        ("cruise_parasite_dominant", lambda: check_cruise_parasite(cfg)),
        ("ps_conservation", lambda: check_conservation(cfg, rng)),
        ("los_probability_monotone", lambda: check_los_monotone(cfg)),
        ("swipt_rate_penalty", lambda: check_rate_ordering(cfg, rng)),
        ("analytic_matches_grid", lambda: check_optimizer_oracle(cfg, rng)),
        ("closed_form_residual", lambda: check_closed_form_gap(cfg, rng)),
        ("battery_law", lambda: check_battery_law(cfg)),
        ("cycle_determinism", lambda: check_determinism(cfg)),
        ("time_increasing_in_data", lambda: check_time_in_data(cfg)),
    ]
    results = []
    for name, fn in checks:
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failed check, not a crashed suite
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append((name, bool(ok), detail))
    return results
