"""Phase configuration of the surface: ideal co-phasing and 1-bit states."""
from __future__ import annotations

import os
import tempfile
from dataclasses import dataclass, field

import numpy as np

from .link import batch_power, total_phases

MAX_EXHAUSTIVE_ELEMENTS = 20
DEFAULT_REFERENCE_SCAN = 64
# powers within this relative distance of the maximum count as ties
TIE_RTOL = 1e-12


class CapacityError(ValueError):
    """Exhaustive enumeration requested for too many elements."""


@dataclass(frozen=True)
class ConfigReport:
    states: np.ndarray = field(repr=False)
    pr: float
    reference_phase: float
    method: str


def _wrap(x):
    """Map angles to (-pi, pi]."""
    return np.pi - np.mod(np.pi - x, 2 * np.pi)


def continuous_targets(scene, paths=None):
    """Per-element phase offsets that bring every term to zero total phase."""
    paths = paths or scene.paths()
    zeros = np.zeros(scene.layout.shape, dtype=int)
    return np.mod(-total_phases(scene, zeros, paths), 2 * np.pi)


def _pick_max(powers, grids):
    """Index of the best grid; near-ties go to the lexicographically smallest."""
    best = np.max(powers)
    tied = np.flatnonzero(powers >= best * (1 - TIE_RTOL))
    if len(tied) == 1:
        return int(tied[0])
    flat = grids[tied].reshape(len(tied), -1)
    order = np.lexsort(flat.T[::-1])
    return int(tied[order[0]])


def nearest_states(scene, reference, paths=None):
    """Per element, the state whose total phase lies closer to ``reference``.

    Equal angular distance resolves to state 0.
    """
    paths = paths or scene.paths()
    psi0 = total_phases(scene, np.zeros(scene.layout.shape, dtype=int), paths)
    psi1 = total_phases(scene, np.ones(scene.layout.shape, dtype=int), paths)
    d0 = np.abs(_wrap(psi0 - reference))
    d1 = np.abs(_wrap(psi1 - reference))
    return (d1 < d0).astype(np.int8)


def one_bit_configure(scene, reference_scan=DEFAULT_REFERENCE_SCAN, paths=None):
    """1-bit configuration by scanning a common reference phase.

    For each of ``reference_scan`` equally spaced references in [0, 2*pi)
    every element independently takes the state closer to the reference;
    the candidate with the highest received power is kept.
    """
    if int(reference_scan) != reference_scan or reference_scan < 1:
        raise ValueError(f"reference_scan must be a positive integer, got {reference_scan!r}")
    paths = paths or scene.paths()
    refs = 2 * np.pi * np.arange(reference_scan) / reference_scan
    grids = np.stack([nearest_states(scene, r, paths) for r in refs])
    powers = batch_power(scene, grids, paths)
    k = _pick_max(powers, grids)
    return ConfigReport(grids[k], float(powers[k]), float(refs[k]), "one-bit")


def _grid_chunk(start, stop, size):
    """Grids for integers [start, stop); the first element is the top bit."""
    codes = np.arange(start, stop, dtype=np.int64)
    shifts = np.arange(size - 1, -1, -1, dtype=np.int64)
    return ((codes[:, None] >> shifts) & 1).astype(np.int8)


def exhaustive_configure(scene, paths=None, chunk=1 << 14):
    """Best 1-bit grid by enumerating all ``2**(M*N)`` configurations.

    Ties go to the lexicographically smallest grid in row-major order.
    """
    size = scene.layout.size
    if size > MAX_EXHAUSTIVE_ELEMENTS:
        raise CapacityError(
            f"{size} elements exceed the exhaustive limit of {MAX_EXHAUSTIVE_ELEMENTS}"
        )
    paths = paths or scene.paths()
    total = 1 << size
    best_p = -np.inf
    best_grid = None
    for start in range(0, total, chunk):
        flat = _grid_chunk(start, min(start + chunk, total), size)
        grids = flat.reshape(-1, *scene.layout.shape)
        powers = batch_power(scene, grids, paths)
        k = _pick_max(powers, grids)
        # enumeration is in lexicographic order, so an earlier winner keeps near-ties
        if best_grid is None or powers[k] * (1 - TIE_RTOL) > best_p:
            best_p, best_grid = float(powers[k]), grids[k].copy()
    return ConfigReport(best_grid, best_p, float("nan"), "exhaustive")


def baseline_grids(scene, kind, seed=None):
    """Reference grids: ``"all-zero"``, ``"all-one"`` or ``"uniform-random"``."""
    shape = scene.layout.shape
    if kind == "all-zero":
        return np.zeros(shape, dtype=np.int8)
    if kind == "all-one":
        return np.ones(shape, dtype=np.int8)
    if kind == "uniform-random":
        if seed is None:
            raise ValueError("uniform-random grids need an explicit seed")
        return np.random.default_rng(seed).integers(0, 2, size=shape, dtype=np.int8)
    raise ValueError(f"unknown baseline kind {kind!r}")


def format_states_csv(states):
    return "".join(",".join(str(int(v)) for v in row) + "\n" for row in np.asarray(states))


def write_states_csv(path, states):
    """Write M lines of N comma-separated states, atomically."""
    text = format_states_csv(states)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def read_states_csv(path):
    rows = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line:
                rows.append([int(v) for v in line.split(",")])
    grid = np.array(rows, dtype=np.int8)
    if grid.ndim != 2 or not np.all((grid == 0) | (grid == 1)):
        raise ValueError(f"{path}: expected a rectangular grid of 0/1 values")
    return grid
