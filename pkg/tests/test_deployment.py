import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from uavrelay.deployment import Region, UserDeployment, sample_users, slant_range, users_at
from uavrelay.exceptions import InvalidParameterError


def test_same_seed_same_users():
    a = sample_users(1e-4, Region(), 3)
    b = sample_users(1e-4, Region(), 3)
    assert np.array_equal(a.positions, b.positions)
    assert np.array_equal(a.slant_ranges, b.slant_ranges)


def test_different_seeds_differ():
    a = sample_users(1e-4, Region(), 3)
    b = sample_users(1e-4, Region(), 4)
    assert len(a) != len(b) or not np.array_equal(a.positions, b.positions)


def test_zero_density_is_empty():
    dep = sample_users(0.0, Region(), 0)
    assert len(dep) == 0
    assert dep.positions.shape == (0, 2)


@pytest.mark.parametrize("bad", [-1e-5, float("nan"), float("inf")])
def test_bad_density(bad):
    with pytest.raises(InvalidParameterError):
        sample_users(bad, Region(), 0)


def test_count_within_three_sigma_of_mean():
    # density 1e-4 on a 1 km disc: mean lambda * area = 100 * pi
    mean = 1e-4 * Region(1000.0).area
    counts = np.array([len(sample_users(1e-4, Region(1000.0), s)) for s in range(200)])
    assert abs(counts.mean() - mean) < 3 * math.sqrt(mean / len(counts))
    assert np.all(np.abs(counts - mean) < 6 * math.sqrt(mean))


def test_users_uniform_on_disc():
    dep = sample_users(2e-3, Region(1000.0), 1)
    d = dep.horizontal_distances
    assert d.max() <= 1000.0
    # for a uniform disc, (d/R)^2 is uniform on [0, 1]
    u = np.sort((d / 1000.0) ** 2)
    ks = np.max(np.abs(u - (np.arange(1, len(u) + 1) / len(u))))
    assert ks < 1.63 / math.sqrt(len(u))  # 1% Kolmogorov-Smirnov critical value


@given(st.floats(0, 1e4), st.floats(1.0, 5e3))
def test_slant_range_bounds(d, h):
    r = slant_range(d, h)
    assert r >= h and r >= d
    assert r <= d + h + 1e-9


def test_slant_range_pythagoras():
    assert slant_range(600.0, 800.0) == 1000.0
    with pytest.raises(InvalidParameterError):
        slant_range(1.0, 0.0)
    with pytest.raises(InvalidParameterError):
        slant_range(-1.0, 10.0)


def test_altitude_change_keeps_ground_positions():
    dep = sample_users(1e-4, Region(), 5, altitude=800.0)
    up = dep.at_altitude(1200.0)
    assert np.array_equal(dep.positions, up.positions)
    assert np.all(up.slant_ranges > dep.slant_ranges)


def test_prefix_takes_nearest():
    dep = users_at([500.0, 10.0, 300.0], 100.0)
    near = dep.prefix(2)
    assert list(near.horizontal_distances) == [10.0, 300.0]
    assert len(dep.prefix(0)) == 0


def test_merged_lengths():
    a = users_at([1.0, 2.0], 10.0)
    b = users_at([3.0], 10.0)
    assert len(a.merged(b)) == 3


def test_length_mismatch_rejected():
    with pytest.raises(InvalidParameterError):
        UserDeployment(np.zeros((2, 2)), np.ones(3), 0)


def test_region_validation():
    with pytest.raises(InvalidParameterError):
        Region(0.0)
    assert Region(2.0).area == pytest.approx(4 * math.pi)
