from dataclasses import replace

import numpy as np
import pytest

from rispower.geometry import RisLayout, Spherical
from rispower.link import table1_scene


@pytest.fixture
def scene():
    return table1_scene()


def random_scene(rng, max_rows=8, max_cols=8, pt=1.0):
    """Random layout and placements in front of the surface."""
    base = table1_scene(pt=pt)
    lam = base.wavelength
    rows = int(rng.integers(1, max_rows + 1))
    cols = int(rng.integers(1, max_cols + 1))
    dx, dy = rng.uniform(0.2, 1.0, size=2) * lam
    tx = Spherical(rng.uniform(0.5, 20), rng.uniform(0, np.deg2rad(80)), rng.uniform(-np.pi, np.pi))
    rx = Spherical(rng.uniform(0.5, 20), rng.uniform(0, np.deg2rad(80)), rng.uniform(-np.pi, np.pi))
    refl = replace(
        base.reflection,
        area=dx * dy,
        c=rng.uniform(0, 3e-5),
        a=rng.uniform(-np.pi, np.pi),
        b=rng.uniform(0, 2 * np.pi),
    )
    return replace(base, layout=RisLayout(rows, cols, dx, dy), tx=tx, rx=rx, reflection=refl)


@pytest.fixture
def rng():
    return np.random.default_rng(20211018)
