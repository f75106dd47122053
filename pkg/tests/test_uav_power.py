import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from uavrelay.exceptions import InvalidParameterError, ModelDomainError
from uavrelay.uav_power import (FormulaVariant, UavAero, blade_profile_power, induced_hover_power,
                                mission_energy, moving_time, power_terms, propulsion_power)

# Frozen from a 40-digit mpmath evaluation of the rotary-wing model at the default constants.
P0_REF = 0.00649793508
PI_REF = 88.62793774108200
HOVER_REF = 88.63443567616200
CRUISE_REF = 3175.334070052615
PARASITE_REF = 3170.220375
P10_REF = 44.50361930952097
CRUISE_LITERAL_REF = 5065.293479481473


def test_hover_components():
    aero = UavAero()
    assert blade_profile_power(aero) == pytest.approx(P0_REF, rel=1e-12)
    assert induced_hover_power(aero) == pytest.approx(PI_REF, rel=1e-12)
    assert propulsion_power(0.0, aero) == pytest.approx(HOVER_REF, rel=1e-12)


def test_cruise_power_and_split():
    t = power_terms(70.0, UavAero())
    assert t["total"] == pytest.approx(CRUISE_REF, rel=1e-12)
    assert t["parasite"] == pytest.approx(PARASITE_REF, rel=1e-12)
    assert t["parasite"] / t["total"] > 0.95
    assert t["profile"] + t["induced"] + t["parasite"] == pytest.approx(t["total"])


def test_intermediate_speed():
    assert propulsion_power(10.0, UavAero()) == pytest.approx(P10_REF, rel=1e-12)


def test_literal_variant_differs_at_speed_and_agrees_at_hover():
    aero = UavAero()
    assert propulsion_power(0.0, aero, FormulaVariant.PAPER_LITERAL) == propulsion_power(0.0, aero)
    assert propulsion_power(70.0, aero, "paper_literal") == pytest.approx(CRUISE_LITERAL_REF, rel=1e-12)


def test_literal_variant_domain_error_when_v0_below_one():
    # heavy air / light craft -> v0 < 1 m/s, where v^4/(4 v0^2) stops dominating
    aero = UavAero(weight=0.5, air_density=1.225, rotor_disc_area=2.0)
    assert aero.hover_induced_velocity < 1
    with pytest.raises(ModelDomainError):
        propulsion_power(30.0, aero, FormulaVariant.PAPER_LITERAL)
    assert math.isfinite(propulsion_power(30.0, aero))


def test_negative_speed_rejected():
    with pytest.raises(InvalidParameterError):
        propulsion_power(-1.0, UavAero())


def test_vectorised_matches_scalar():
    v = np.array([0.0, 10.0, 70.0])
    out = propulsion_power(v, UavAero())
    assert out == pytest.approx([propulsion_power(x, UavAero()) for x in v])


@given(st.floats(min_value=20.0, max_value=150.0))
def test_power_grows_past_minimum_power_speed(v):
    aero = UavAero()
    assert propulsion_power(v + 1.0, aero) > propulsion_power(v, aero)


@given(st.floats(0.0, 200.0))
def test_standard_induced_term_never_negative(v):
    assert power_terms(v, UavAero())["induced"] >= -1e-9


def test_moving_time():
    assert moving_time(7000.0, 70.0) == pytest.approx(100.0)
    with pytest.raises(InvalidParameterError):
        moving_time(10.0, 0.0)


def test_mission_energy_composition():
    aero = UavAero()
    led = mission_energy([10.0, 20.0], 5.0, 2.0, aero)
    assert led.e_net1 == pytest.approx(HOVER_REF * 30.0, rel=1e-12)
    assert led.e_net2 == pytest.approx(HOVER_REF * 5.0, rel=1e-12)
    assert led.e_moving == pytest.approx(CRUISE_REF * 2.0, rel=1e-12)
    assert led.e_total == pytest.approx(led.e_net1 + led.e_net2 + led.e_moving)
    assert led.t_total == 37.0


def test_mission_energy_empty():
    led = mission_energy([], 0.0, 0.0, UavAero())
    assert led.e_total == 0.0 and led.t_total == 0.0


@pytest.mark.parametrize("field", ["weight", "air_density", "rotor_disc_area", "tip_speed"])
def test_aero_rejects_nonpositive(field):
    with pytest.raises(InvalidParameterError):
        UavAero(**{field: 0.0})
