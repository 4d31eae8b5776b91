"""Antenna gain patterns, gain/effective-area relations and dB helpers."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

PATTERN_KINDS = ("isotropic-with-peak", "cosine-power")


@dataclass(frozen=True)
class AntennaPattern:
    """Rotationally symmetric gain pattern about the antenna boresight.

    ``isotropic-with-peak`` returns ``peak_gain`` everywhere in the front
    half-space; ``cosine-power`` returns ``peak_gain * cos(angle)**q``.
    """

    kind: str = "isotropic-with-peak"
    peak_gain: float = 1.0
    q: float = 0.0

    def __post_init__(self):
        if self.kind not in PATTERN_KINDS:
            raise ValueError(f"unknown pattern kind {self.kind!r}")
        if not self.peak_gain > 0:
            raise ValueError(f"peak_gain must be positive, got {self.peak_gain!r}")
        if not self.q >= 0:
            raise ValueError(f"exponent q must be non-negative, got {self.q!r}")


@dataclass(frozen=True)
class Efficiency:
    eta_r: float

    def __post_init__(self):
        if not 0 < self.eta_r <= 1:
            raise ValueError(f"eta_r must lie in (0, 1], got {self.eta_r!r}")


def gain(pattern, boresight_angle):
    """Linear gain at ``boresight_angle`` radians off boresight.

    Angles beyond pi/2 are behind the antenna and get zero gain.
    """
    angle = np.abs(np.asarray(boresight_angle, dtype=float))
    if pattern.kind == "isotropic-with-peak":
        g = np.full_like(angle, pattern.peak_gain)
    else:
        g = pattern.peak_gain * np.clip(np.cos(angle), 0.0, None) ** pattern.q
    g = np.where(angle > np.pi / 2, 0.0, g)
    return g if g.ndim else float(g)


def area_from_gain(g, wavelength):
    """Effective area (m^2) of a lossless aperture with linear gain ``g``."""
    return np.asarray(g) * wavelength**2 / (4 * np.pi)


def rx_area_from_gain(g, wavelength, eta):
    """Receive effective area with the antenna efficiency in the denominator."""
    eta_r = eta.eta_r if isinstance(eta, Efficiency) else float(eta)
    return np.asarray(g) * wavelength**2 / (4 * np.pi * eta_r)


def db_to_linear(x):
    return 10.0 ** (np.asarray(x, dtype=float) / 10.0)


def linear_to_db(x):
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("linear_to_db needs strictly positive input")
    return 10.0 * np.log10(x)
