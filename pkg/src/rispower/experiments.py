"""Parameter sweeps over link placements and model comparisons."""
from __future__ import annotations

import io
from dataclasses import dataclass, field

import numpy as np

from .control import DEFAULT_REFERENCE_SCAN, baseline_grids, continuous_targets, one_bit_configure
from .geometry import Spherical
from .link import aligned_power_bound, received_power, specular_power

PARAMETERS = ("d1", "d2", "theta2")
MODELS = ("proposed", "specular")
CONFIGURATIONS = ("one-bit", "continuous-aligned", "all-zero")


@dataclass(frozen=True)
class SweepSpec:
    """A uniform sweep of one placement parameter.

    Distances are in meters, ``theta2`` in degrees.  With ``frozen=True`` the
    surface is configured once at the first sweep point and kept.
    """

    parameter: str
    start: float
    stop: float
    steps: int = 41
    models: tuple = MODELS
    configuration: str = "one-bit"
    frozen: bool = False
    reference_scan: int = DEFAULT_REFERENCE_SCAN
    mu_bar: float = 1.0

    def __post_init__(self):
        if self.parameter not in PARAMETERS:
            raise ValueError(f"parameter must be one of {PARAMETERS}, got {self.parameter!r}")
        if not self.start < self.stop:
            raise ValueError("sweep needs start < stop")
        if int(self.steps) != self.steps or self.steps < 2:
            raise ValueError("sweep needs at least 2 steps")
        models = tuple(self.models)
        if not models or any(m not in MODELS for m in models):
            raise ValueError(f"models must be a non-empty subset of {MODELS}")
        # canonical column order regardless of how the caller listed them
        object.__setattr__(self, "models", tuple(m for m in MODELS if m in models))
        if self.configuration not in CONFIGURATIONS:
            raise ValueError(f"configuration must be one of {CONFIGURATIONS}")

    def values(self):
        return np.linspace(self.start, self.stop, self.steps)


@dataclass(frozen=True)
class SweepRow:
    parameter: str
    value: float
    attenuation_db: dict = field(default_factory=dict)


def place(scene, parameter, value):
    """Scene with one placement parameter replaced."""
    tx, rx = scene.tx, scene.rx
    if parameter == "d1":
        return scene.moved(tx=Spherical(value, tx.theta, tx.phi))
    if parameter == "d2":
        return scene.moved(rx=Spherical(value, rx.theta, rx.phi))
    if parameter == "theta2":
        return scene.moved(rx=Spherical(rx.d, np.deg2rad(value), rx.phi))
    raise ValueError(f"unknown parameter {parameter!r}")


def configured_power(scene, configuration, states=None, reference_scan=DEFAULT_REFERENCE_SCAN,
                     paths=None):
    """Proposed-model power and the grid used.

    When ``states`` is given it is evaluated as-is (frozen configuration).
    """
    paths = paths or scene.paths()
    if configuration == "continuous-aligned":
        return aligned_power_bound(scene, paths), None
    if states is None:
        if configuration == "one-bit":
            states = one_bit_configure(scene, reference_scan, paths).states
        else:
            states = baseline_grids(scene, "all-zero")
    return received_power(scene, states, paths=paths), states


def run_sweep(scene, spec):
    rows = []
    frozen_states = None
    for value in spec.values():
        s = place(scene, spec.parameter, float(value))
        out = {}
        if "proposed" in spec.models:
            res, states = configured_power(
                s, spec.configuration, frozen_states, spec.reference_scan
            )
            if spec.frozen:
                frozen_states = states
            out["proposed"] = res.attenuation_db
        if "specular" in spec.models:
            out["specular"] = specular_power(s, spec.mu_bar).attenuation_db
        rows.append(SweepRow(spec.parameter, float(value), out))
    return rows


def divergence_report(rows, anchor):
    """Gap in dB between the two models after aligning them at ``anchor``.

    Both curves are shifted to coincide at the anchor value (linear
    interpolation between rows) and ``|proposed - specular|`` is returned
    for every row.
    """
    if not rows:
        raise ValueError("no sweep rows")
    for m in MODELS:
        if any(m not in r.attenuation_db for r in rows):
            raise ValueError(f"sweep rows lack the {m!r} column")
    x = np.array([r.value for r in rows])
    prop = np.array([r.attenuation_db["proposed"] for r in rows])
    spec = np.array([r.attenuation_db["specular"] for r in rows])
    if not x.min() <= anchor <= x.max():
        raise ValueError(f"anchor {anchor} outside the swept range")
    diff = prop - spec
    offset = np.interp(anchor, x, diff)
    return np.abs(diff - offset)


def _fmt(v):
    return f"{v:.6g}"


def format_sweep_csv(rows, models=None):
    """CSV text with header ``param,value,<model>_db...``."""
    if models is None:
        models = [m for m in MODELS if rows and m in rows[0].attenuation_db]
    buf = io.StringIO()
    buf.write(",".join(["param", "value"] + [f"{m}_db" for m in models]) + "\n")
    for r in rows:
        cells = [r.parameter, _fmt(r.value)] + [_fmt(r.attenuation_db[m]) for m in models]
        buf.write(",".join(cells) + "\n")
    return buf.getvalue()
