import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from rispower.experiments import (
    SweepRow,
    SweepSpec,
    divergence_report,
    format_sweep_csv,
    place,
    run_sweep,
)
from rispower.link import table1_scene


@pytest.fixture(scope="module")
def far_rows():
    return run_sweep(table1_scene(d2=2.0, theta2_deg=30.0), SweepSpec("d1", 5, 50, 41))


@pytest.fixture(scope="module")
def angle_rows():
    return run_sweep(table1_scene(d1=3.0, d2=2.0), SweepSpec("theta2", 0, 60, 41))


@pytest.mark.parametrize(
    "kw",
    [
        dict(parameter="d3", start=1, stop=2),
        dict(parameter="d1", start=2, stop=1),
        dict(parameter="d1", start=1, stop=2, steps=1),
        dict(parameter="d1", start=1, stop=2, models=()),
        dict(parameter="d1", start=1, stop=2, models=("friis",)),
        dict(parameter="d1", start=1, stop=2, configuration="greedy"),
    ],
)
def test_spec_validation(kw):
    with pytest.raises(ValueError):
        SweepSpec(**kw)


def test_place():
    s = table1_scene()
    assert place(s, "d1", 7.0).tx.d == 7.0
    assert place(s, "d2", 4.0).rx.d == 4.0
    assert_allclose(place(s, "theta2", 45.0).rx.theta_deg, 45.0)
    assert place(s, "theta2", 45.0).rx.d == s.rx.d


def test_near_field_sweep_shape():
    rows = run_sweep(table1_scene(d2=2.0, theta2_deg=30.0), SweepSpec("d1", 1, 5, 41))
    assert len(rows) == 41
    assert [r.value for r in rows] == sorted(r.value for r in rows)
    assert rows[0].value == 1 and rows[-1].value == 5
    for r in rows:
        assert set(r.attenuation_db) == {"proposed", "specular"}
        assert all(np.isfinite(v) for v in r.attenuation_db.values())
    prop = [r.attenuation_db["proposed"] for r in rows]
    assert prop[0] > prop[-1]


def test_far_field_gap_grows(far_rows):
    gap = divergence_report(far_rows, 5.0)
    x = np.array([r.value for r in far_rows])
    assert gap[0] == 0.0
    assert gap[-1] > gap[0]
    assert np.all(np.diff(gap[x >= 10]) >= 0)


def test_angle_sweep_behavior(angle_rows):
    spec = np.array([r.attenuation_db["specular"] for r in angle_rows])
    prop = np.array([r.attenuation_db["proposed"] for r in angle_rows])
    assert np.ptp(spec) <= 1e-12
    assert np.ptp(prop) > 0.1
    assert prop[-1] < prop[0]
    # with the baseline flat, the gap is the proposed curve's own variation
    gap = divergence_report(angle_rows, 0.0)
    assert_allclose(gap, np.abs(prop - prop[0]), atol=1e-12)


def test_sweep_deterministic():
    s = table1_scene()
    spec = SweepSpec("theta2", 0, 60, 7)
    a, b = run_sweep(s, spec), run_sweep(s, spec)
    assert format_sweep_csv(a) == format_sweep_csv(b)


def test_configurations_order():
    s = table1_scene()
    out = {}
    for cfg in ("one-bit", "continuous-aligned", "all-zero"):
        rows = run_sweep(s, SweepSpec("d1", 2, 4, 3, models=("proposed",), configuration=cfg))
        out[cfg] = np.array([r.attenuation_db["proposed"] for r in rows])
    assert np.all(out["continuous-aligned"] >= out["one-bit"])
    assert np.all(out["one-bit"] >= out["all-zero"])


def test_frozen_configuration_is_no_better():
    s = table1_scene()
    live = run_sweep(s, SweepSpec("d1", 1, 5, 9, models=("proposed",)))
    frozen = run_sweep(s, SweepSpec("d1", 1, 5, 9, models=("proposed",), frozen=True))
    assert live[0].attenuation_db == frozen[0].attenuation_db
    for a, b in zip(live, frozen):
        assert b.attenuation_db["proposed"] <= a.attenuation_db["proposed"] + 1e-12


def test_divergence_identical_curves():
    rows = [SweepRow("d1", float(x), {"proposed": -x, "specular": -x}) for x in range(5)]
    assert_allclose(divergence_report(rows, 2.0), 0.0)


def test_divergence_errors():
    rows = [SweepRow("d1", float(x), {"proposed": -x}) for x in range(5)]
    with pytest.raises(ValueError):
        divergence_report(rows, 2.0)
    rows = [SweepRow("d1", float(x), {"proposed": -x, "specular": 0.0}) for x in range(5)]
    with pytest.raises(ValueError):
        divergence_report(rows, 9.0)


def test_divergence_closed_form_trend():
    # far-field power laws: 1/(d1 d2)^2 versus 1/(d1 + d2)^2
    x = np.linspace(5, 50, 10)
    rows = [
        SweepRow("d1", v, {"proposed": -20 * math.log10(v * 2), "specular": -20 * math.log10(v + 2)})
        for v in x
    ]
    gap = divergence_report(rows, 5.0)
    assert gap[0] == 0 and np.all(np.diff(gap) > 0)


def test_csv_format(far_rows):
    text = format_sweep_csv(far_rows[:2])
    lines = text.split("\n")
    assert lines[0] == "param,value,proposed_db,specular_db"
    assert lines[1].startswith("d1,5,")
    assert text.endswith("\n") and len(lines) == 4
    cells = lines[1].split(",")
    assert len(cells[2].lstrip("-").replace(".", "")) <= 6


def test_csv_single_model():
    rows = run_sweep(table1_scene(), SweepSpec("d2", 1, 2, 2, models=("specular",)))
    assert format_sweep_csv(rows).splitlines()[0] == "param,value,specular_db"
