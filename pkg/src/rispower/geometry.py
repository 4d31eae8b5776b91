"""Element grid coordinates, coordinate transforms and per-element path geometry.

The surface lies in the x-y plane with its geometric center at the origin and
the +z axis as the surface normal.  Rows run parallel to the x axis; row 1 is
the top row (largest y) and column 1 the leftmost column (smallest x).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

SPEED_OF_LIGHT = 299_792_458.0  # m/s


def wavelength_from_frequency(frequency):
    """Free-space wavelength in meters for a carrier frequency in Hz."""
    if frequency <= 0:
        raise ValueError(f"frequency must be positive, got {frequency!r}")
    return SPEED_OF_LIGHT / frequency


@dataclass(frozen=True)
class RisLayout:
    rows: int
    cols: int
    dx: float
    dy: float

    def __post_init__(self):
        if int(self.rows) != self.rows or self.rows < 1:
            raise ValueError(f"rows must be a positive integer, got {self.rows!r}")
        if int(self.cols) != self.cols or self.cols < 1:
            raise ValueError(f"cols must be a positive integer, got {self.cols!r}")
        if not (self.dx > 0 and self.dy > 0):
            raise ValueError("element pitch dx, dy must be positive")

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def size(self):
        return self.rows * self.cols

    @property
    def element_area(self):
        return self.dx * self.dy

    @property
    def half_diagonal(self):
        """Distance from the center to the farthest element center."""
        return 0.5 * np.hypot((self.cols - 1) * self.dx, (self.rows - 1) * self.dy)

    def positions(self):
        """Element centers as an ``(M, N, 3)`` array, row-major in (m, n)."""
        m = np.arange(1, self.rows + 1, dtype=float)
        n = np.arange(1, self.cols + 1, dtype=float)
        x = (n - (self.cols + 1) / 2) * self.dx
        y = ((self.rows + 1) / 2 - m) * self.dy
        out = np.zeros((self.rows, self.cols, 3))
        out[..., 0] = x[np.newaxis, :]
        out[..., 1] = y[:, np.newaxis]
        return out


@dataclass(frozen=True)
class Point3:
    x: float
    y: float
    z: float

    def __post_init__(self):
        if not np.all(np.isfinite([self.x, self.y, self.z])):
            raise ValueError(f"non-finite coordinate in {self!r}")

    def as_array(self):
        return np.array([self.x, self.y, self.z], dtype=float)


@dataclass(frozen=True)
class Spherical:
    """Position seen from the surface center.  Angles are in radians."""

    d: float
    theta: float
    phi: float = 0.0

    def __post_init__(self):
        if not self.d >= 0:
            raise ValueError(f"distance must be non-negative, got {self.d!r}")
        if not np.all(np.isfinite([self.d, self.theta, self.phi])):
            raise ValueError(f"non-finite coordinate in {self!r}")

    @classmethod
    def from_degrees(cls, d, theta_deg, phi_deg=0.0):
        return cls(d, np.deg2rad(theta_deg), np.deg2rad(phi_deg))

    @property
    def theta_deg(self):
        return float(np.rad2deg(self.theta))

    @property
    def phi_deg(self):
        return float(np.rad2deg(self.phi))


def element_position(m, n, layout):
    """Center of element (m, n); indices are 1-based."""
    if not (1 <= m <= layout.rows and 1 <= n <= layout.cols):
        raise IndexError(
            f"element ({m}, {n}) outside a {layout.rows}x{layout.cols} grid"
        )
    return Point3(
        (n - (layout.cols + 1) / 2) * layout.dx,
        ((layout.rows + 1) / 2 - m) * layout.dy,
        0.0,
    )


def spherical_to_cartesian(s):
    st = np.sin(s.theta)
    return Point3(
        s.d * st * np.cos(s.phi),
        s.d * st * np.sin(s.phi),
        s.d * np.cos(s.theta),
    )


def cartesian_to_spherical(p):
    """Inverse of :func:`spherical_to_cartesian`.

    On-axis points get azimuth 0.  Azimuth lies in (-pi, pi].
    """
    rho = np.hypot(p.x, p.y)
    d = np.hypot(rho, p.z)
    if d == 0:
        raise ValueError("direction of the origin is undefined")
    theta = np.arctan2(rho, p.z)
    if rho == 0:
        phi = 0.0
    else:
        phi = np.arctan2(p.y, p.x)
        if phi <= -np.pi:
            phi = np.pi
    return Spherical(float(d), float(theta), float(phi))


def _as_point(p):
    if isinstance(p, Spherical):
        return spherical_to_cartesian(p)
    if isinstance(p, Point3):
        return p
    return Point3(*np.asarray(p, dtype=float))


@dataclass(frozen=True, eq=False)
class PathGrid:
    """Per-element path quantities, every field an ``(M, N)`` array.

    ``theta_t``/``phi_t`` give the direction from each element towards the
    transmitter, ``theta_r``/``phi_r`` towards the receiver, both measured
    against the surface normal.  ``phase`` is the propagation phase
    ``2*pi*(d_t + d_r)/wavelength``.
    """

    d_t: np.ndarray
    d_r: np.ndarray
    theta_t: np.ndarray
    phi_t: np.ndarray
    theta_r: np.ndarray
    phi_r: np.ndarray
    phase: np.ndarray
    wavelength: float

    def __post_init__(self):
        for name in ("d_t", "d_r", "theta_t", "phi_t", "theta_r", "phi_r", "phase"):
            getattr(self, name).setflags(write=False)

    @property
    def shape(self):
        return self.d_t.shape


def _direction_angles(vec):
    rho = np.hypot(vec[..., 0], vec[..., 1])
    theta = np.arctan2(rho, vec[..., 2])
    phi = np.where(rho == 0, 0.0, np.arctan2(vec[..., 1], vec[..., 0]))
    return theta, phi


def path_geometry(layout, tx, rx, wavelength):
    """Distances, direction angles and propagation phase for every element.

    ``tx`` and ``rx`` may be :class:`Point3` or :class:`Spherical`; both must
    lie strictly in front of the surface (z > 0).
    """
    if not wavelength > 0:
        raise ValueError(f"wavelength must be positive, got {wavelength!r}")
    tx, rx = _as_point(tx), _as_point(rx)
    if tx.z <= 0 or rx.z <= 0:
        raise ValueError("transmitter and receiver must be in front of the surface (z > 0)")

    pos = layout.positions()
    to_tx = tx.as_array() - pos
    to_rx = rx.as_array() - pos
    d_t = np.sqrt(np.sum(to_tx**2, axis=-1))
    d_r = np.sqrt(np.sum(to_rx**2, axis=-1))
    theta_t, phi_t = _direction_angles(to_tx)
    theta_r, phi_r = _direction_angles(to_rx)
    phase = (2 * np.pi / wavelength) * (d_t + d_r)
    return PathGrid(d_t, d_r, theta_t, phi_t, theta_r, phi_r, phase, float(wavelength))


def fraunhofer_distance(layout, wavelength, convention="effective"):
    """Near/far-field boundary of the aperture in meters.

    ``"as-printed"`` divides the doubled aperture area by the squared
    wavelength; ``"effective"`` divides by the wavelength itself, which is
    the variant that reproduces the ~6 m boundary quoted for the 20x55
    prototype at 5.8 GHz.
    """
    if not wavelength > 0:
        raise ValueError(f"wavelength must be positive, got {wavelength!r}")
    aperture = 2 * layout.rows * layout.cols * layout.dx * layout.dy
    if convention == "effective":
        return aperture / wavelength
    if convention == "as-printed":
        return aperture / wavelength**2
    raise ValueError(f"unknown convention {convention!r}")
