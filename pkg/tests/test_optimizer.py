import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from uavrelay.channel import ChannelModel
from uavrelay.deployment import users_at
from uavrelay.exceptions import DivisionUndefinedError, InvalidProblemError, InvalidParameterError
from uavrelay.optimizer import (OptimizationProblem, Solution, SolutionSource, agree_within_lattice,
                                build_problem, closed_form_tightness_gap, constraint_c1, eq40_residual,
                                is_feasible, kkt_residuals, objective_eq30, reduction_trace, solve_analytic,
                                solve_grid, solve_paper_closed_form, stationarity)
from uavrelay.optimizer.reduction import LOS_FACTOR_ONE, LOW_SNR_LINEAR
from uavrelay.scenario import MissionConfig
from uavrelay.swipt import SwiptConfig


def prob(g1, e_th, e_c, gains=(1.0,)):
    return OptimizationProblem.from_constants(g1, e_th, e_c, gains)


problems = st.builds(prob, st.floats(0.0, 5.0), st.floats(1e-3, 2.0), st.floats(0.0, 3.0))


# ------------------------------------------------------------------ problem


def test_build_problem_unit_constants():
    m = MissionConfig(altitude_net1=1.0, p_t_users=1.0)
    dep = users_at([0.0], 1.0)
    p = build_problem(m, ChannelModel(), dep, SwiptConfig(e_threshold=3.0, battery_initial=5.0))
    assert p.g1 == pytest.approx(1.0)
    assert p.g2 == pytest.approx(2.0)
    assert p.per_user_gains == (1.0,)


def test_build_problem_additive_and_empty():
    m = MissionConfig(p_t_users=2.0)
    sw = SwiptConfig(e_threshold=1.0)
    a = build_problem(m, ChannelModel(), users_at([100.0], 800.0), sw)
    b = build_problem(m, ChannelModel(), users_at([300.0], 800.0), sw)
    ab = build_problem(m, ChannelModel(), users_at([100.0, 300.0], 800.0), sw)
    assert ab.g1 == pytest.approx(a.g1 + b.g1)
    with pytest.raises(InvalidProblemError):
        build_problem(m, ChannelModel(), users_at([], 800.0), sw)


def test_build_problem_auto_threshold_uses_cycle_energy():
    from uavrelay.scenario import run_cycle
    from uavrelay.uav_power import UavAero

    m = MissionConfig(seed=3)
    dep = m.deploy()
    p = build_problem(m, ChannelModel(), dep, SwiptConfig())
    e = run_cycle(m, ChannelModel(), UavAero(), SwiptConfig(), "A", dep).ledger.e_total
    assert p.e_threshold == pytest.approx(e)
    assert math.copysign(1, p.g2) == math.copysign(1, SwiptConfig().battery_initial - e)


def test_objective_and_c1_examples():
    p = prob(2.0, 1.0, 0.8, gains=(0.5, 1.5))
    assert objective_eq30(p, 1.0) == 0.0
    assert objective_eq30(p, 0.0) == pytest.approx(2.0)
    assert constraint_c1(p, 0.0, 0.7) == pytest.approx(p.g2)
    xs = [constraint_c1(p, b, 0.3) for b in (0.0, 0.5, 1.0)]
    assert xs[1] - xs[0] == pytest.approx(xs[2] - xs[1])


# ------------------------------------------------------------------ closed form


def test_closed_form_examples():
    s = solve_paper_closed_form(prob(0.25, 40.0, 60.0))
    assert s.eta_bat == pytest.approx(0.5)
    assert s.eta_ps == pytest.approx(0.5)
    s = solve_paper_closed_form(prob(0.25, 40.0, 100.0))
    assert s.eta_bat == pytest.approx(1.5)
    assert not s.feasible
    assert s.source is SolutionSource.PAPER_CLOSED_FORM


def test_closed_form_division_errors():
    with pytest.raises(DivisionUndefinedError):
        solve_paper_closed_form(prob(1.0, 1.0, 1.0))
    with pytest.raises(DivisionUndefinedError):
        solve_paper_closed_form(prob(1.0, 0.0, 1.0))


@given(st.floats(0.0, 5.0), st.floats(0.1, 2.0), st.floats(0.0, 3.0))
def test_closed_form_leaves_g1_squared(g1, e_th, e_c):
    p = prob(g1, e_th, e_c)
    if p.g2 == 0:
        return
    s = solve_paper_closed_form(p)
    assert eq40_residual(p, s.eta_bat, s.eta_ps) == pytest.approx(closed_form_tightness_gap(p), abs=1e-9, rel=1e-9)


# ------------------------------------------------------------------ grid / analytic


def test_grid_examples():
    s = solve_grid(prob(2.0, 1.0, 0.8), 1001)
    assert (s.eta_bat, s.eta_ps) == pytest.approx((1.0, 0.6))
    s = solve_grid(prob(1.0, 1.0, 1.5), 1001)
    assert s.eta_ps == 0.0 and s.eta_bat == 0.0
    assert s.eta_bat_range == pytest.approx((0.0, 0.5))


def test_grid_infeasible():
    s = solve_grid(prob(0.5, 1.0, 0.2), 101)
    assert not s.feasible


def test_grid_resolution_guard():
    with pytest.raises(InvalidParameterError):
        solve_grid(prob(1.0, 1.0, 1.0), 1)


@settings(max_examples=40)
@given(problems)
def test_analytic_matches_grid(p):
    assert agree_within_lattice(solve_analytic(p), solve_grid(p, 2001), 2001)


@settings(max_examples=30)
@given(problems)
def test_grid_resolution_doubling(p):
    a, b = solve_grid(p, 501), solve_grid(p, 1001)
    assert a.feasible == b.feasible
    if a.feasible:
        assert abs(a.eta_ps - b.eta_ps) <= 1 / 500 + 1e-12


@given(problems, st.floats(0, 1), st.floats(0, 1))
def test_analytic_beats_random_feasible_points(p, eb, ep):
    s = solve_analytic(p)
    if is_feasible(p, eb, ep) and s.feasible:
        assert s.objective >= objective_eq30(p, ep) - 1e-12


@given(problems)
def test_feasible_flags_agree_with_constraints(p):
    for s in (solve_analytic(p), solve_grid(p, 201)):
        if s.feasible:
            assert is_feasible(p, s.eta_bat, s.eta_ps)


def test_analytic_branches():
    s = solve_analytic(prob(2.0, 1.0, 0.8))
    assert (s.eta_bat, s.eta_ps) == pytest.approx((1.0, 0.6))
    s = solve_analytic(prob(0.5, 1.0, 0.2))
    assert not s.feasible and s.eta_ps == pytest.approx(3.6)
    s = solve_analytic(prob(0.0, 1.0, 0.5))
    assert not s.feasible
    s = solve_analytic(prob(3.0, 1.0, 2.0))
    assert s.eta_ps == 0.0 and s.eta_bat_range == (0.0, 1.0)


# ------------------------------------------------------------------ KKT


@settings(max_examples=40)
@given(problems)
def test_kkt_satisfied_at_analytic_optimum(p):
    s = solve_analytic(p)
    if s.feasible:
        rep = kkt_residuals(p, s)
        assert rep.satisfied, rep.to_dict()


def test_kkt_flags_non_optimal_point():
    p = prob(2.0, 1.0, 0.8)
    bad = Solution(1.0, 0.9, float(objective_eq30(p, 0.9)), True, SolutionSource.GRID)
    assert not kkt_residuals(p, bad).satisfied


def test_stationarity_reads_off_with_lambda2_zero():
    p = prob(2.0, 1.0, 0.8)
    lam1 = 0.7
    st_ = stationarity(p, 0.5, 0.3, [lam1, 0.0, 0.0])
    assert st_[0] == pytest.approx(-lam1 * (0.3 * p.g1 - p.e_threshold))


def test_grid_boundary_point_eq40_small():
    p = prob(2.0, 1.0, 0.8)
    s = solve_grid(p, 1001)
    assert abs(eq40_residual(p, s.eta_bat, s.eta_ps)) <= p.g1 / 1000 + 1e-12


def test_kkt_report_serialises():
    p = prob(2.0, 1.0, 0.8)
    d = kkt_residuals(p, solve_analytic(p)).to_dict()
    assert set(d) >= {"multipliers", "stationarity", "complementary_slackness", "eq40_residual"}
    assert d["primal_violation"] == 0.0


# ------------------------------------------------------------------ reduction chain


@pytest.fixture(scope="module")
def trace():
    m = MissionConfig(seed=5, p_t_users=5.0)
    dep = m.deploy()
    return reduction_trace(m, ChannelModel(), dep, SwiptConfig(e_threshold=1e-3, battery_initial=5e-4))


def test_trace_labels(trace):
    assert trace.labels == ["Eq26", "Eq42", "Eq43", "Eq44", "Eq45", "Eq28", "Eq29", "Eq30"]
    assert LOW_SNR_LINEAR in trace["Eq45"].approximations
    assert LOS_FACTOR_ONE in trace["Eq44"].approximations


def test_trace_first_steps_identical(trace, rng):
    for eb, ep in rng.uniform(0, 1, (20, 2)):
        assert trace["Eq26"].constraint(eb, ep) == pytest.approx(trace["Eq42"].constraint(eb, ep), rel=1e-12)
        assert trace["Eq26"].objective(eb, ep) == trace["Eq42"].objective(eb, ep)


def test_flight_time_is_affine_in_inverse_rates(trace, rng):
    c = trace.constants
    for eb, ep in rng.uniform(0, 0.99, (20, 2)):
        lhs = trace["Eq42"].objective(eb, ep)
        rhs = c["t_moving"] + c["data_threshold"] * trace["Eq43"].objective(eb, ep)
        assert lhs == pytest.approx(rhs, rel=1e-12)


def test_eq43_eq44_constraints_equal_with_unit_los_factor():
    m = MissionConfig(seed=5)
    ch = ChannelModel(nlos_attenuation=1.0)
    t = reduction_trace(m, ch, m.deploy(), SwiptConfig(e_threshold=1e-3, battery_initial=5e-4))
    for eb, ep in [(0.2, 0.3), (1.0, 1.0), (0.7, 0.1)]:
        assert t["Eq43"].constraint(eb, ep) == pytest.approx(t["Eq44"].constraint(eb, ep), rel=1e-12)


def test_low_snr_linearisation(trace, rng):
    # per-user SNRs sit near 1e-6, where 1/log2(1 + g) ~ ln2 / g
    w = trace.constants["bandwidth"]
    for eb, ep in rng.uniform(0, 0.9, (10, 2)):
        exact = trace["Eq44"].objective(eb, ep)
        linear = math.log(2) / w * trace["Eq45"].objective(eb, ep)
        assert exact == pytest.approx(linear, rel=1e-3)


def test_linearisation_breaks_at_high_snr():
    g = 30.0
    exact = 1 / math.log2(1 + g)
    linear = math.log(2) / g
    assert abs(linear - exact) / exact > 0.1


def test_min_sum_reciprocal_and_max_sum_agree_on_ordering(trace, rng):
    pts = rng.uniform(0, 0.95, (40, 2))
    inv = [trace["Eq45"].objective(*x) for x in pts]
    tot = [trace["Eq28"].objective(*x) for x in pts]
    assert int(np.argmin(inv)) == int(np.argmax(tot))
    for i in range(0, 40, 2):
        assert (inv[i] < inv[i + 1]) == (tot[i] > tot[i + 1])


def test_eq30_objective_matches_scaled_eq29(trace, rng):
    p_t = trace.constants["p_t_users"]
    g_bs = trace.constants["gamma_bs_los1"]
    for eb, ep in rng.uniform(0, 1, (10, 2)):
        lhs = trace["Eq29"].objective(eb, ep)
        assert lhs == pytest.approx(g_bs + p_t * trace["Eq30"].objective(eb, ep), rel=1e-12)
        assert trace["Eq30"].constraint(eb, ep) == pytest.approx(
            ep * eb * trace.constants["g1"] - trace.constants["e_threshold"] * eb + trace.constants["g2"], rel=1e-12)
