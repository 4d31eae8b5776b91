"""Angle-dependent RCS and phase models of one surface element.

Both models depend only on the zenith angle of the reflected direction.  The
RCS follows the flat-plate sinc-squared lobe on top of a constant floor::

    sigma(theta) = 4*pi*A**2/lambda**2 * sinc(k*sqrt(A)*sin(theta))**2 + c

and the reflection phase of control state 0 is ``a*cos(theta) + b``.  State 1
adds ``state_phase_delta`` (pi for an ideal 1-bit element).
"""
from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass, field
from typing import Optional

import numpy as np


class AmplitudeClampWarning(RuntimeWarning):
    """Inverted reflection amplitude exceeded one and was clamped."""


class BranchCrossingError(ValueError):
    """Phase samples do not lie on a single 2*pi branch."""


@dataclass(frozen=True)
class ReflectionParams:
    area: float
    wavelength: float
    c: float
    a: float
    b: float
    state_phase_delta: float = np.pi

    def __post_init__(self):
        if not self.area > 0:
            raise ValueError(f"element area must be positive, got {self.area!r}")
        if not self.wavelength > 0:
            raise ValueError(f"wavelength must be positive, got {self.wavelength!r}")
        if not self.c >= 0:
            raise ValueError(f"RCS floor c must be non-negative, got {self.c!r}")

    @property
    def wavenumber(self):
        return 2 * np.pi / self.wavelength

    @property
    def peak_lobe(self):
        """Specular-lobe RCS at normal reflection, excluding the floor."""
        return 4 * np.pi * self.area**2 / self.wavelength**2


@dataclass(frozen=True)
class ReflectionSample:
    theta_r: float
    sigma: Optional[float] = None
    phase: Optional[float] = None

    def __post_init__(self):
        if not 0 <= self.theta_r < np.pi / 2:
            raise ValueError(f"theta_r must lie in [0, pi/2), got {self.theta_r!r}")
        if self.sigma is None and self.phase is None:
            raise ValueError("a sample needs at least one of sigma or phase")


def rcs_lobe(theta_r, area, wavelength):
    """The angle-dependent first term of the RCS model, without the floor."""
    k = 2 * np.pi / wavelength
    x = k * np.sqrt(area) * np.sin(np.asarray(theta_r, dtype=float))
    # np.sinc(u) = sin(pi u)/(pi u), with the removable singularity handled
    return 4 * np.pi * area**2 / wavelength**2 * np.sinc(x / np.pi) ** 2


def rcs(theta_r, p):
    """Radar cross section (m^2) of one element at reflection zenith ``theta_r``."""
    out = rcs_lobe(theta_r, p.area, p.wavelength) + p.c
    return out if np.ndim(out) else float(out)


def phase_shift(theta_r, state, p):
    """Reflection phase in [0, 2*pi) for control ``state`` (0 or 1)."""
    state = np.asarray(state)
    if not np.all((state == 0) | (state == 1)):
        raise ValueError("control states must be 0 or 1")
    raw = p.a * np.cos(theta_r) + p.b + state * p.state_phase_delta
    out = np.mod(raw, 2 * np.pi)
    # mod can round up to exactly 2*pi for tiny negative inputs
    out = np.where(out >= 2 * np.pi, 0.0, out)
    return out if np.ndim(out) else float(out)


def reflection_coefficient(theta_r, state, p, ae_t, ae_r):
    """Complex reflection coefficient recovered from the RCS model.

    The amplitude is ``rcs / sqrt(ae_t * ae_r)``; values above one are
    clamped (a passive element cannot amplify) and an
    :class:`AmplitudeClampWarning` is issued.
    """
    ae = np.sqrt(np.asarray(ae_t, dtype=float) * np.asarray(ae_r, dtype=float))
    if np.any(ae <= 0):
        raise ValueError("effective areas must be positive")
    mu = np.asarray(rcs(theta_r, p)) / ae
    if np.any(mu > 1):
        warnings.warn(
            f"reflection amplitude {float(np.max(mu)):.4g} exceeds 1; clamped",
            AmplitudeClampWarning,
            stacklevel=2,
        )
        mu = np.minimum(mu, 1.0)
    out = mu * np.exp(1j * np.asarray(phase_shift(theta_r, state, p)))
    return out if np.ndim(out) else complex(out)


@dataclass(frozen=True)
class RcsFloorFit:
    c: float
    residuals: np.ndarray = field(repr=False)

    @property
    def rms(self):
        return float(np.sqrt(np.mean(self.residuals**2)))


@dataclass(frozen=True)
class PhaseFit:
    a: float
    b: float
    residuals: np.ndarray = field(repr=False)

    @property
    def rms(self):
        return float(np.sqrt(np.mean(self.residuals**2)))


def fit_rcs_floor(samples, area, wavelength):
    """Least-squares RCS floor ``c`` with the lobe term held fixed.

    The objective is linear in ``c`` with unit regressor, so the solution is
    the mean offset between the samples and the lobe.
    """
    pts = [s for s in samples if s.sigma is not None]
    if not pts:
        raise ValueError("no samples carry an RCS value")
    theta = np.array([s.theta_r for s in pts])
    sigma = np.array([s.sigma for s in pts], dtype=float)
    offset = sigma - rcs_lobe(theta, area, wavelength)
    c = float(np.mean(offset))
    return RcsFloorFit(c, offset - c)


def fit_phase(samples):
    """Least-squares ``(a, b)`` of the cosine phase model.

    Phases must already sit on one 2*pi branch: samples ordered by angle may
    not jump by more than pi, and the overall span must stay below 2*pi.
    """
    pts = sorted((s for s in samples if s.phase is not None), key=lambda s: s.theta_r)
    if len(pts) < 2:
        raise ValueError("phase fit needs at least two samples")
    theta = np.array([s.theta_r for s in pts])
    phase = np.array([s.phase for s in pts], dtype=float)
    if np.ptp(phase) >= 2 * np.pi or np.any(np.abs(np.diff(phase)) > np.pi):
        raise BranchCrossingError("phase samples cross a 2*pi branch; unwrap them first")
    basis = np.column_stack([np.cos(theta), np.ones_like(theta)])
    if np.ptp(basis[:, 0]) <= 1e-12:
        raise np.linalg.LinAlgError("all samples share one cos(theta); (a, b) is not identifiable")
    (a, b), *_ = np.linalg.lstsq(basis, phase, rcond=None)
    return PhaseFit(float(a), float(b), phase - basis @ np.array([a, b]))


def _opt_float(text):
    text = text.strip()
    return float(text) if text else None


def read_samples_csv(path):
    """Read ``theta_deg,sigma_m2,phase_deg`` rows; empty fields are absent."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        expected = ["theta_deg", "sigma_m2", "phase_deg"]
        if reader.fieldnames is None or [f.strip() for f in reader.fieldnames] != expected:
            raise ValueError(f"{path}: header must be {','.join(expected)}")
        samples = []
        for lineno, row in enumerate(reader, start=2):
            try:
                theta = float(row["theta_deg"])
                sigma = _opt_float(row["sigma_m2"] or "")
                phase = _opt_float(row["phase_deg"] or "")
                samples.append(
                    ReflectionSample(
                        np.deg2rad(theta),
                        sigma,
                        None if phase is None else np.deg2rad(phase),
                    )
                )
            except (TypeError, ValueError) as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from None
    return samples


def write_samples_csv(path, samples):
    def fmt(v):
        return "" if v is None else repr(float(v))

    with open(path, "w", newline="") as fh:
        fh.write("theta_deg,sigma_m2,phase_deg\n")
        for s in samples:
            phase = None if s.phase is None else np.rad2deg(s.phase)
            fh.write(f"{fmt(np.rad2deg(s.theta_r))},{fmt(s.sigma)},{fmt(phase)}\n")


def model_samples(p, theta_r):
    """Noiseless samples of both models for state 0, phases left unwrapped."""
    theta_r = np.atleast_1d(np.asarray(theta_r, dtype=float))
    sigma = np.atleast_1d(rcs(theta_r, p))
    phase = p.a * np.cos(theta_r) + p.b
    return [ReflectionSample(float(t), float(s), float(f)) for t, s, f in zip(theta_r, sigma, phase)]
