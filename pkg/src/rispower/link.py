"""Received-power models of a surface-aided link.

The proposed model sums the coherent contribution of every element,

    P_r = P_t / (16 pi^2 eta_r) * | sum sqrt(G_t G_r) sigma exp(j(phi + Phi)) / (d_t d_r) |^2

where ``sigma`` and ``phi`` come from :mod:`rispower.reflection` and ``Phi``
is the propagation phase over the element path.  The specular baseline
treats the surface as a mirror, so power falls with ``(d1 + d2)**2``.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from .geometry import (
    RisLayout,
    Spherical,
    path_geometry,
    spherical_to_cartesian,
    wavelength_from_frequency,
)
from .radiation import AntennaPattern, Efficiency, db_to_linear, gain
from .reflection import ReflectionParams, phase_shift, rcs, reflection_coefficient

REDUCTIONS = ("sequential", "tree")


@dataclass(frozen=True)
class SceneConfig:
    frequency: float
    layout: RisLayout
    tx: Spherical
    rx: Spherical
    tx_pattern: AntennaPattern
    rx_pattern: AntennaPattern
    eta_r: Efficiency
    reflection: ReflectionParams
    pt: float = 1.0

    def __post_init__(self):
        if not self.frequency > 0:
            raise ValueError(f"frequency must be positive, got {self.frequency!r}")
        if not self.pt > 0:
            raise ValueError(f"transmit power must be positive, got {self.pt!r}")
        for name in ("tx", "rx"):
            s = getattr(self, name)
            if not (0 <= s.theta < np.pi / 2):
                raise ValueError(f"{name} zenith angle must lie in [0, 90) degrees")
            if not s.d > 0:
                raise ValueError(f"{name} distance must be positive")
        if not np.isclose(self.reflection.wavelength, self.wavelength, rtol=1e-12, atol=0):
            raise ValueError("reflection parameters were built for a different wavelength")
        if not np.isclose(self.reflection.area, self.layout.element_area, rtol=1e-12, atol=0):
            raise ValueError("reflection area does not match the element pitch dx*dy")

    @property
    def wavelength(self):
        return wavelength_from_frequency(self.frequency)

    def paths(self):
        return path_geometry(self.layout, self.tx, self.rx, self.wavelength)

    def moved(self, tx=None, rx=None):
        """Copy of the scene with the transmitter and/or receiver relocated."""
        return replace(self, tx=tx or self.tx, rx=rx or self.rx)


def table1_scene(d1=3.0, d2=2.0, theta1_deg=0.0, theta2_deg=30.0, phi1_deg=0.0,
                 phi2_deg=0.0, pt=1.0):
    """The 5.8 GHz, 20x55-element prototype with its fitted reflection model."""
    frequency = 5.8e9
    layout = RisLayout(20, 55, 14.3e-3, 10.27e-3)
    horn = AntennaPattern("isotropic-with-peak", float(db_to_linear(17.1)))
    return SceneConfig(
        frequency=frequency,
        layout=layout,
        tx=Spherical.from_degrees(d1, theta1_deg, phi1_deg),
        rx=Spherical.from_degrees(d2, theta2_deg, phi2_deg),
        tx_pattern=horn,
        rx_pattern=horn,
        eta_r=Efficiency(0.5429),
        reflection=ReflectionParams(
            area=layout.element_area,
            wavelength=wavelength_from_frequency(frequency),
            c=1.42e-5,
            a=np.deg2rad(90.0),
            b=np.deg2rad(180.0),
        ),
        pt=pt,
    )


@dataclass(frozen=True)
class PowerResult:
    pr: float
    attenuation_db: float
    per_element_amplitudes: Optional[np.ndarray] = field(default=None, repr=False)


def _power_result(pr, pt, terms=None):
    with np.errstate(divide="ignore"):
        att = float(10 * np.log10(pr / pt))
    return PowerResult(float(pr), att, terms)


def _off_boresight(source, positions):
    """Angle at ``source`` between the line to the center and each element."""
    src = source.as_array()
    to_center = -src / np.linalg.norm(src)
    to_elem = positions - src
    cosang = to_elem @ to_center / np.linalg.norm(to_elem, axis=-1)
    return np.arccos(np.clip(cosang, -1.0, 1.0))


def antenna_gains(scene):
    """Per-element transmit and receive gains, each an ``(M, N)`` array.

    Both antennas point their boresight at the surface center.
    """
    shape = scene.layout.shape
    out = []
    for sph, pattern in ((scene.tx, scene.tx_pattern), (scene.rx, scene.rx_pattern)):
        if pattern.kind == "isotropic-with-peak":
            out.append(np.full(shape, pattern.peak_gain))
        else:
            ang = _off_boresight(spherical_to_cartesian(sph), scene.layout.positions())
            out.append(gain(pattern, ang))
    return out[0], out[1]


def element_magnitudes(scene, paths=None):
    """``sqrt(G_t G_r) * sigma / (d_t d_r)`` for every element."""
    paths = paths or scene.paths()
    g_t, g_r = antenna_gains(scene)
    sigma = rcs(paths.theta_r, scene.reflection)
    return np.sqrt(g_t * g_r) * sigma / (paths.d_t * paths.d_r)


def total_phases(scene, states, paths=None, extra_phase=None):
    """Reflection phase plus propagation phase of every element."""
    paths = paths or scene.paths()
    states = np.asarray(states)
    out = phase_shift(paths.theta_r, states, scene.reflection) + paths.phase
    if extra_phase is not None:
        out = out + extra_phase
    return out


def _prefactor(scene):
    return scene.pt / (16 * np.pi**2 * scene.eta_r.eta_r)


def _reduce(terms, reduction):
    """Sum over the last axis in a fixed, reproducible order."""
    if reduction == "sequential":
        # cumsum accumulates strictly left to right, unlike np.sum
        return np.cumsum(terms, axis=-1)[..., -1]
    if reduction == "tree":
        while terms.shape[-1] > 1:
            if terms.shape[-1] % 2:
                head = terms[..., :-1]
                terms = np.concatenate(
                    [head[..., 0::2] + head[..., 1::2], terms[..., -1:]], axis=-1
                )
            else:
                terms = terms[..., 0::2] + terms[..., 1::2]
        return terms[..., 0]
    raise ValueError(f"unknown reduction {reduction!r}")


def _check_states(scene, states):
    states = np.asarray(states)
    if states.shape != scene.layout.shape:
        raise ValueError(
            f"state grid shape {states.shape} does not match layout {scene.layout.shape}"
        )
    return states


def coherent_sum(scene, states, paths=None, extra_phase=None, reduction="sequential"):
    """Complex sum of element contributions, row-major."""
    states = _check_states(scene, states)
    paths = paths or scene.paths()
    mag = element_magnitudes(scene, paths)
    terms = mag * np.exp(1j * total_phases(scene, states, paths, extra_phase))
    return _reduce(terms.ravel(), reduction), terms


def batch_power(scene, state_batch, paths=None, reduction="sequential"):
    """Received power for a stack of state grids shaped ``(K, M, N)``.

    Agrees bit for bit with :func:`received_power` on each grid.
    """
    paths = paths or scene.paths()
    state_batch = np.asarray(state_batch)
    if state_batch.shape[1:] != scene.layout.shape:
        raise ValueError("state batch does not match the layout")
    mag = element_magnitudes(scene, paths)
    terms = mag * np.exp(1j * total_phases(scene, state_batch, paths))
    s = _reduce(terms.reshape(len(state_batch), -1), reduction)
    return _prefactor(scene) * np.abs(s) ** 2


def received_power(scene, states, *, paths=None, extra_phase=None,
                   reduction="sequential", diagnostics=False):
    """Coherent received power of the proposed model.

    ``extra_phase`` adds a continuous per-element phase on top of the
    control state; it is how ideal (unquantized) co-phasing is evaluated.
    ``reduction="tree"`` sums pairwise in a fixed order instead of row by
    row; both are deterministic.
    """
    s, terms = coherent_sum(scene, states, paths, extra_phase, reduction)
    pr = _prefactor(scene) * abs(s) ** 2
    return _power_result(pr, scene.pt, terms if diagnostics else None)


def aligned_power_bound(scene, paths=None):
    """Received power with every contribution brought to a common phase."""
    mag = element_magnitudes(scene, paths)
    total = _reduce(mag.ravel(), "sequential")
    return _power_result(_prefactor(scene) * total**2, scene.pt)


def composite_channel(scene, states, *, paths=None, extra_phase=None,
                      reduction="sequential"):
    """End-to-end amplitude ``H = sum h g Gamma`` so that ``P_r = P_t |H|^2``."""
    s, _ = coherent_sum(scene, states, paths, extra_phase, reduction)
    return complex(s / (4 * np.pi * np.sqrt(scene.eta_r.eta_r)))


def projected_area(scene, theta):
    """Element effective area seen from zenith ``theta``: ``dx*dy*cos(theta)``."""
    return scene.layout.element_area * np.cos(theta)


def element_power(scene, m, n, paths=None):
    """Power the receiver would collect via element (m, n) before reflection loss.

    Indices are 1-based.  Element effective areas use the projected aperture.
    """
    if not (1 <= m <= scene.layout.rows and 1 <= n <= scene.layout.cols):
        raise IndexError(f"element ({m}, {n}) outside the layout")
    paths = paths or scene.paths()
    g_t, g_r = antenna_gains(scene)
    i, j = m - 1, n - 1
    ae_t = projected_area(scene, paths.theta_t[i, j])
    ae_r = projected_area(scene, paths.theta_r[i, j])
    num = scene.pt * g_t[i, j] * g_r[i, j] * ae_t * ae_r
    return float(num / ((4 * np.pi * paths.d_t[i, j] * paths.d_r[i, j]) ** 2 * scene.eta_r.eta_r))


def reflection_grid(scene, states=None, paths=None):
    """Complex reflection coefficient of every element."""
    paths = paths or scene.paths()
    if states is None:
        states = np.zeros(scene.layout.shape, dtype=int)
    states = _check_states(scene, states)
    return reflection_coefficient(
        paths.theta_r,
        states,
        scene.reflection,
        projected_area(scene, paths.theta_t),
        projected_area(scene, paths.theta_r),
    )


def mean_reflection_amplitude(mu):
    mu = np.asarray(mu, dtype=float)
    if mu.size == 0:
        raise ValueError("empty amplitude grid")
    if np.any((mu < 0) | (mu > 1)):
        raise ValueError("reflection amplitudes must lie in [0, 1]")
    return float(np.mean(mu))


def specular_power(scene, mu_bar=1.0):
    """Mirror-like baseline using the boresight (peak) antenna gains."""
    if not 0 < mu_bar <= 1:
        raise ValueError(f"mu_bar must lie in (0, 1], got {mu_bar!r}")
    g = scene.tx_pattern.peak_gain * scene.rx_pattern.peak_gain
    ratio = scene.wavelength * mu_bar / (4 * np.pi * (scene.tx.d + scene.rx.d))
    return _power_result(scene.pt * g * ratio**2, scene.pt)
