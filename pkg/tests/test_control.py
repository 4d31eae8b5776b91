from dataclasses import replace

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from conftest import random_scene
from rispower.control import (
    CapacityError,
    baseline_grids,
    continuous_targets,
    exhaustive_configure,
    nearest_states,
    one_bit_configure,
    read_states_csv,
    write_states_csv,
)
from rispower.geometry import RisLayout
from rispower.link import aligned_power_bound, batch_power, received_power, total_phases


def small_scene(rng, rows, cols):
    s = random_scene(rng, 1, 1)
    lay = RisLayout(rows, cols, s.layout.dx, s.layout.dy)
    return replace(s, layout=lay)


def brute_force_best(scene):
    """Plain loop over every grid, independent of the chunked enumeration."""
    size = scene.layout.size
    best = None
    for code in range(1 << size):
        bits = [(code >> (size - 1 - i)) & 1 for i in range(size)]
        grid = np.array(bits).reshape(scene.layout.shape)
        p = received_power(scene, grid).pr
        if best is None or p > best[0] * (1 + 1e-12):
            best = (p, grid)
    return best


def test_continuous_targets_zero_total_phase(rng):
    for _ in range(10):
        s = random_scene(rng)
        targets = continuous_targets(s)
        zeros = np.zeros(s.layout.shape, dtype=int)
        total = total_phases(s, zeros) + targets
        resid = np.angle(np.exp(1j * total))
        assert np.max(np.abs(resid)) < 1e-9
        assert np.all((targets >= 0) & (targets < 2 * np.pi))


def test_continuous_targets_reach_bound(rng):
    for _ in range(10):
        s = random_scene(rng)
        zeros = np.zeros(s.layout.shape, dtype=int)
        pr = received_power(s, zeros, extra_phase=continuous_targets(s)).pr
        assert_allclose(pr, aligned_power_bound(s).pr, rtol=1e-12)


def test_continuous_targets_track_phase_differences(rng):
    # targets differ by minus the difference in total phase, e.g. pi for opposed paths
    for _ in range(10):
        s = small_scene(rng, 1, 2)
        p = s.paths()
        t = continuous_targets(s, p)
        psi = total_phases(s, np.zeros((1, 2), dtype=int), p)
        diff = np.angle(np.exp(1j * ((t[0, 1] - t[0, 0]) + (psi[0, 1] - psi[0, 0]))))
        assert abs(diff) < 1e-9


def test_single_element_tie_rule(rng):
    for _ in range(10):
        s = small_scene(rng, 1, 1)
        assert_array_equal(one_bit_configure(s).states, [[0]])
        assert_array_equal(exhaustive_configure(s).states, [[0]])


def test_nearest_state_tie_goes_to_zero(rng):
    s = small_scene(rng, 1, 1)
    psi0 = total_phases(s, np.zeros((1, 1), dtype=int))[0, 0]
    # reference exactly a quarter turn away from both states
    assert nearest_states(s, psi0 + np.pi / 2)[0, 0] == 0
    assert nearest_states(s, psi0 + np.pi)[0, 0] == 1
    assert nearest_states(s, psi0)[0, 0] == 0


def test_opposed_pair_gets_flipped(rng):
    for _ in range(20):
        s = small_scene(rng, 1, 2)
        rep = exhaustive_configure(s)
        psi = total_phases(s, rep.states)
        # chosen phases end up within a quarter turn of each other
        assert abs(np.angle(np.exp(1j * (psi[0, 0] - psi[0, 1])))) <= np.pi / 2 + 1e-12


def test_exhaustive_matches_brute_force(rng):
    for _ in range(15):
        rows, cols = [(1, 3), (2, 2), (2, 3), (3, 2)][rng.integers(4)]
        s = small_scene(rng, rows, cols)
        rep = exhaustive_configure(s, chunk=5)
        p, grid = brute_force_best(s)
        assert_allclose(rep.pr, p, rtol=1e-12)
        assert_array_equal(rep.states, grid)
        assert rep.method == "exhaustive"


def test_exhaustive_capacity_guard(scene):
    with pytest.raises(CapacityError):
        exhaustive_configure(scene)


def test_one_bit_matches_exhaustive_small(rng):
    for _ in range(100):
        rows, cols = [(1, 1), (1, 2), (2, 1), (2, 2), (1, 3), (1, 4), (4, 1)][rng.integers(7)]
        s = small_scene(rng, rows, cols)
        one = one_bit_configure(s, 64)
        ex = exhaustive_configure(s)
        assert ex.pr >= one.pr * (1 - 1e-12)
        assert_allclose(one.pr, ex.pr, rtol=1e-9)


def test_one_bit_report_consistent(scene):
    rep = one_bit_configure(scene)
    assert rep.states.shape == (20, 55)
    assert rep.pr == received_power(scene, rep.states).pr
    assert 0 <= rep.reference_phase < 2 * np.pi
    assert rep.pr >= received_power(scene, baseline_grids(scene, "all-zero")).pr


def test_one_bit_scale_invariant(rng):
    for _ in range(10):
        s = random_scene(rng)
        a = one_bit_configure(s)
        b = one_bit_configure(replace(s, pt=1234.5))
        assert_array_equal(a.states, b.states)


def test_one_bit_superset_scan(rng):
    for _ in range(20):
        s = random_scene(rng)
        coarse = one_bit_configure(s, 16).pr
        fine = one_bit_configure(s, 32).pr
        assert fine >= coarse * (1 - 1e-12)


def test_global_flip_keeps_power(rng):
    for _ in range(10):
        s = random_scene(rng)
        rep = one_bit_configure(s)
        assert_allclose(received_power(s, 1 - rep.states).pr, rep.pr, rtol=1e-9)


def test_one_bit_rejects_bad_scan(scene):
    with pytest.raises(ValueError):
        one_bit_configure(scene, 0)


def test_baselines(scene):
    z = baseline_grids(scene, "all-zero")
    assert z.shape == (20, 55) and z.sum() == 0
    assert baseline_grids(scene, "all-one").sum() == 1100
    a = baseline_grids(scene, "uniform-random", seed=3)
    assert_array_equal(a, baseline_grids(scene, "uniform-random", seed=3))
    assert not np.array_equal(a, baseline_grids(scene, "uniform-random", seed=4))
    with pytest.raises(ValueError):
        baseline_grids(scene, "uniform-random")
    with pytest.raises(ValueError):
        baseline_grids(scene, "checkerboard")


def test_random_grids_lose_to_configured(rng):
    for _ in range(20):
        s = random_scene(rng)
        configured = one_bit_configure(s).pr
        grids = np.stack([baseline_grids(s, "uniform-random", seed=k) for k in range(100)])
        assert np.mean(batch_power(s, grids)) <= configured


def test_states_csv_round_trip(tmp_path, scene):
    grid = baseline_grids(scene, "uniform-random", seed=1)
    path = tmp_path / "states.csv"
    write_states_csv(path, grid)
    lines = path.read_text().splitlines()
    assert len(lines) == 20 and all(len(line.split(",")) == 55 for line in lines)
    assert_array_equal(read_states_csv(path), grid)
