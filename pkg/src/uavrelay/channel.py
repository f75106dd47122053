"""Ground-to-air / air-to-ground link budget.

Every function accepts scalars or numpy arrays. Noise powers are linear watts;
the 0 dB noise figure used by the default simulation setup is read as 0 dBW = 1 W.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import InvalidGeometryError, InvalidParameterError, UnreachableUserError


@dataclass(frozen=True)
class ChannelModel:
    # Logistic LOS parameters (urban). C plays both roles of the logistic.
    los_b: float = 0.16
    los_c: float = 9.61
    nlos_attenuation: float = 0.8
    path_loss_exponent: float = 2.0
    noise_uplink: float = 1.0
    noise_downlink: float = 1.0
    bandwidth: float = 1e6

    def __post_init__(self):
        for name in ("los_b", "los_c", "nlos_attenuation", "path_loss_exponent",
                     "noise_uplink", "noise_downlink", "bandwidth"):
            if not math.isfinite(getattr(self, name)):
                raise InvalidParameterError(f"{name} must be finite")
        if not 0 < self.nlos_attenuation <= 1:
            raise InvalidParameterError("nlos_attenuation must lie in (0, 1]")
        if self.path_loss_exponent < 1:
            raise InvalidParameterError("path_loss_exponent must be >= 1")
        if self.noise_uplink <= 0 or self.noise_downlink <= 0:
            raise InvalidParameterError("noise powers must be > 0")
        if self.bandwidth <= 0:
            raise InvalidParameterError("bandwidth must be > 0")
        if self.los_b < 0 or self.los_c < 0:
            raise InvalidParameterError("LOS parameters must be >= 0")


@dataclass(frozen=True)
class LinkBudget:
    p_los: float
    received_power: float
    snr: float
    rate: float


def elevation_angle_deg(altitude, slant_range):
    """Elevation angle in degrees of a user seen from the UAV."""
    altitude = np.asarray(altitude, dtype=float)
    slant_range = np.asarray(slant_range, dtype=float)
    if np.any(altitude <= 0):
        raise InvalidParameterError("altitude must be > 0")
    ratio = altitude / slant_range
    if np.any(ratio > 1.0 + 1e-12):
        raise InvalidGeometryError("altitude exceeds slant range")
    out = np.degrees(np.arcsin(np.minimum(ratio, 1.0)))
    return out if out.ndim else float(out)


def los_probability(theta_deg, model: ChannelModel):
    theta = np.asarray(theta_deg, dtype=float)
    if np.any(theta < 0) or np.any(theta > 90):
        raise InvalidParameterError("elevation angle must lie in [0, 90] degrees")
    c, b = model.los_c, model.los_b
    out = 1.0 / (1.0 + c * np.exp(-b * (theta - c)))
    return out if out.ndim else float(out)


def _los_mix(p_los, model):
    return p_los + model.nlos_attenuation * (1.0 - p_los)


def received_power_uplink(p_los, p_t, slant_range, model: ChannelModel):
    """Power received at the UAV from one NET1 user (expected LOS/NLOS mixture)."""
    if np.any(np.asarray(p_t) < 0):
        raise InvalidParameterError("transmit power must be >= 0")
    if np.any(np.asarray(slant_range) <= 0):
        raise InvalidParameterError("slant range must be > 0")
    return _los_mix(p_los, model) * p_t * np.power(slant_range, -model.path_loss_exponent)


def received_power_downlink(p_los_bs, p_t_uav, altitude, model: ChannelModel):
    """Power received at the NET2 BS, which sits directly below the UAV."""
    if np.any(np.asarray(p_t_uav) < 0):
        raise InvalidParameterError("transmit power must be >= 0")
    if np.any(np.asarray(altitude) <= 0):
        raise InvalidParameterError("altitude must be > 0")
    return _los_mix(p_los_bs, model) * p_t_uav * np.power(altitude, -model.path_loss_exponent)


def snr(received_power, noise):
    if noise <= 0:
        raise InvalidParameterError("noise power must be > 0")
    return received_power / noise


def shannon_rate(snr_value, bandwidth):
    s = np.asarray(snr_value, dtype=float)
    if np.any(s < 0):
        raise InvalidParameterError("snr must be >= 0")
    # log1p keeps precision in the very-low-SNR regime the default setup lives in
    out = bandwidth * np.log1p(s) / math.log(2.0)
    return out if out.ndim else float(out)


def snr_scenario_b(eta_ps, received_power, noise):
    """SNR left for decoding after the power splitter diverts ``eta_ps``."""
    if not 0.0 <= eta_ps <= 1.0:
        raise InvalidParameterError(f"eta_ps must lie in [0, 1], got {eta_ps!r}")
    return snr((1.0 - eta_ps) * received_power, noise)


def collection_time(data_threshold, rate):
    """Time to move ``data_threshold`` bits at ``rate`` bit/s (also used for the BS leg)."""
    data = np.asarray(data_threshold, dtype=float)
    rate = np.asarray(rate, dtype=float)
    if np.any(data < 0):
        raise InvalidParameterError("data threshold must be >= 0")
    if np.any((rate <= 0) & (data > 0)):
        raise UnreachableUserError("zero rate with data still pending")
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(data == 0, 0.0, data / np.where(rate > 0, rate, 1.0))
    return out if out.ndim else float(out)


def uplink_budget(slant_ranges, altitude, p_t, model: ChannelModel, eta_ps: float = 0.0):
    """Vectorised per-user budget for NET1 -> UAV; returns arrays (p_los, p_r, snr, rate)."""
    slant_ranges = np.asarray(slant_ranges, dtype=float)
    if slant_ranges.size == 0:
        z = np.zeros(0)
        return z, z, z, z
    theta = np.atleast_1d(elevation_angle_deg(altitude, slant_ranges))
    p_los = np.atleast_1d(los_probability(theta, model))
    p_r = received_power_uplink(p_los, p_t, slant_ranges, model)
    gamma = snr_scenario_b(eta_ps, p_r, model.noise_uplink)
    return p_los, p_r, gamma, shannon_rate(gamma, model.bandwidth)


def downlink_budget(altitude, p_t_uav, model: ChannelModel, theta_deg: float = 90.0) -> LinkBudget:
    """UAV -> NET2 BS link. The BS is below the UAV so LOS is evaluated at 90 degrees."""
    p_los = los_probability(theta_deg, model)
    p_r = float(received_power_downlink(p_los, p_t_uav, altitude, model))
    gamma = snr(p_r, model.noise_downlink)
    return LinkBudget(p_los, p_r, gamma, shannon_rate(gamma, model.bandwidth))
