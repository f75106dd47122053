"""NET1 user placement: homogeneous Poisson point process on a disc."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .exceptions import InvalidParameterError


@dataclass(frozen=True)
class Region:
    """Disc centred under the UAV's NET1 hover point."""

    radius: float = 1000.0

    def __post_init__(self):
        if not (math.isfinite(self.radius) and self.radius > 0):
            raise InvalidParameterError(f"region radius must be > 0, got {self.radius!r}")

    @property
    def area(self) -> float:
        return math.pi * self.radius**2


@dataclass(frozen=True)
class UserDeployment:
    positions: np.ndarray  # (n, 2) ground coordinates in m
    slant_ranges: np.ndarray  # (n,) UAV-to-user distance in m
    seed: int
    altitude: float = field(default=800.0)

    def __post_init__(self):
        if len(self.positions) != len(self.slant_ranges):
            raise InvalidParameterError("positions and slant_ranges differ in length")

    def __len__(self) -> int:
        return len(self.slant_ranges)

    @property
    def horizontal_distances(self) -> np.ndarray:
        if len(self.positions) == 0:
            return np.zeros(0)
        return np.hypot(self.positions[:, 0], self.positions[:, 1])

    def at_altitude(self, altitude: float) -> "UserDeployment":
        """Same ground positions seen from a different hover altitude."""
        return UserDeployment(
            self.positions, slant_range(self.horizontal_distances, altitude), self.seed, altitude
        )

    def sorted_by_range(self) -> "UserDeployment":
        order = np.argsort(self.slant_ranges, kind="stable")
        return UserDeployment(self.positions[order], self.slant_ranges[order], self.seed, self.altitude)

    def prefix(self, n: int) -> "UserDeployment":
        """The ``n`` nearest users (ascending slant range)."""
        s = self.sorted_by_range()
        return UserDeployment(s.positions[:n], s.slant_ranges[:n], self.seed, self.altitude)

    def merged(self, other: "UserDeployment") -> "UserDeployment":
        return UserDeployment(
            np.concatenate([self.positions, other.positions]),
            np.concatenate([self.slant_ranges, other.slant_ranges]),
            self.seed,
            self.altitude,
        )


def slant_range(horizontal_distance, altitude):
    """Straight-line UAV-to-user distance, ``sqrt(h**2 + d**2)``."""
    if np.any(np.asarray(altitude) <= 0):
        raise InvalidParameterError("altitude must be > 0")
    if np.any(np.asarray(horizontal_distance) < 0):
        raise InvalidParameterError("horizontal distance must be >= 0")
    return np.hypot(altitude, horizontal_distance)


def sample_users(density: float, region: Region, seed: int, altitude: float = 800.0) -> UserDeployment:
    """Draw one PPP realisation of NET1 users.

    The Poisson count is drawn first and the positions second, both from a single
    ``numpy`` generator seeded with ``seed``; this order is part of the
    reproducibility contract.
    """
    if not math.isfinite(density) or density < 0:
        raise InvalidParameterError(f"density must be finite and >= 0, got {density!r}")
    rng = np.random.default_rng(seed)
    n = int(rng.poisson(density * region.area))
    r = region.radius * np.sqrt(rng.random(n))
    phi = 2.0 * np.pi * rng.random(n)
    positions = np.column_stack([r * np.cos(phi), r * np.sin(phi)]) if n else np.zeros((0, 2))
    return UserDeployment(positions, slant_range(r, altitude), seed, altitude)


def users_at(horizontal_distances, altitude: float, seed: int = 0) -> UserDeployment:
    """Deterministic deployment with users on the x axis; handy for tests and theory."""
    d = np.asarray(horizontal_distances, dtype=float).reshape(-1)
    positions = np.column_stack([d, np.zeros_like(d)]) if len(d) else np.zeros((0, 2))
    return UserDeployment(positions, slant_range(d, altitude), seed, altitude)
