"""Command-line front end.

    rispower eval      --scene F [--config one-bit|all-zero|continuous-aligned]
    rispower sweep     --scene F --param d1|d2|theta2 --from X --to Y --steps N
                       [--models proposed specular] [--out sweep.csv] [--plot out.svg]
    rispower configure --scene F --out states.csv
    rispower fit       --data refl.csv --target rcs|phase [--scene F]
    rispower boundary  --scene F [--convention effective|as-printed]

Exit status is 0 on success, 1 on a computation or input error and 2 on a
usage error.
"""
from __future__ import annotations

import argparse
import io
import json
import os
import sys
import tempfile
from importlib import resources

import numpy as np

from . import control, experiments
from .geometry import RisLayout, Spherical, fraunhofer_distance, wavelength_from_frequency
from .link import SceneConfig, specular_power
from .radiation import AntennaPattern, Efficiency, db_to_linear
from .reflection import ReflectionParams, fit_phase, fit_rcs_floor, read_samples_csv


class SceneFileError(ValueError):
    pass


# key -> required?  Optional keys carry their default.
_SCHEMA = {
    "frequency_hz": True,
    "layout": {"rows": True, "cols": True, "dx_m": True, "dy_m": True},
    "tx": {"d_m": True, "theta_deg": True, "phi_deg": True},
    "rx": {"d_m": True, "theta_deg": True, "phi_deg": True},
    "antennas": {"gain_dbi": True, "pattern": "isotropic-with-peak", "q": 0.0},
    "eta_r": True,
    "reflection": {"c_m2": True, "a_deg": True, "b_deg": True, "state_delta_deg": 180.0},
    "pt_w": 1.0,
}


def _flatten(doc, schema, prefix=""):
    if not isinstance(doc, dict):
        raise SceneFileError(f"{prefix.rstrip('.') or 'scene'}: expected an object")
    for key in doc:
        if key not in schema:
            raise SceneFileError(f"unknown key {prefix}{key}")
    out = {}
    for key, rule in schema.items():
        name = prefix + key
        if isinstance(rule, dict):
            if key not in doc:
                raise SceneFileError(f"missing key {name}")
            out.update(_flatten(doc[key], rule, name + "."))
        elif key in doc:
            out[name] = doc[key]
        elif rule is True:
            raise SceneFileError(f"missing key {name}")
        else:
            out[name] = rule
    return out


def _number(flat, key, low=None, high=None, low_open=False, high_open=False):
    v = flat[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not np.isfinite(v):
        raise SceneFileError(f"{key}: expected a finite number, got {v!r}")
    if low is not None and (v < low or (low_open and v == low)):
        raise SceneFileError(f"{key}: {v} is out of range")
    if high is not None and (v > high or (high_open and v == high)):
        raise SceneFileError(f"{key}: {v} is out of range")
    return float(v)


def scene_from_dict(doc):
    flat = _flatten(doc, _SCHEMA)
    num = lambda key, **kw: _number(flat, key, **kw)  # noqa: E731
    frequency = num("frequency_hz", low=0, low_open=True)
    rows, cols = num("layout.rows", low=1), num("layout.cols", low=1)
    for key, v in (("layout.rows", rows), ("layout.cols", cols)):
        if v != int(v):
            raise SceneFileError(f"{key}: expected an integer, got {v}")
    layout = RisLayout(
        int(rows), int(cols),
        num("layout.dx_m", low=0, low_open=True),
        num("layout.dy_m", low=0, low_open=True),
    )
    places = {}
    for end in ("tx", "rx"):
        places[end] = Spherical.from_degrees(
            num(f"{end}.d_m", low=0, low_open=True),
            num(f"{end}.theta_deg", low=0, high=90, high_open=True),
            num(f"{end}.phi_deg", low=-180, high=180),
        )
    kind = flat["antennas.pattern"]
    if kind not in ("isotropic-with-peak", "cosine-power"):
        raise SceneFileError(f"antennas.pattern: unknown pattern {kind!r}")
    pattern = AntennaPattern(
        kind, float(db_to_linear(num("antennas.gain_dbi"))), num("antennas.q", low=0)
    )
    wavelength = wavelength_from_frequency(frequency)
    reflection = ReflectionParams(
        area=layout.element_area,
        wavelength=wavelength,
        c=num("reflection.c_m2", low=0),
        a=np.deg2rad(num("reflection.a_deg")),
        b=np.deg2rad(num("reflection.b_deg")),
        state_phase_delta=np.deg2rad(num("reflection.state_delta_deg")),
    )
    return SceneConfig(
        frequency=frequency,
        layout=layout,
        tx=places["tx"],
        rx=places["rx"],
        tx_pattern=pattern,
        rx_pattern=pattern,
        eta_r=Efficiency(num("eta_r", low=0, high=1, low_open=True)),
        reflection=reflection,
        pt=num("pt_w", low=0, low_open=True),
    )


def _resolve(path):
    """Bundled scene files (e.g. ``table1.json``) are found by bare name."""
    if os.path.exists(path) or os.path.dirname(path):
        return path
    bundled = resources.files("rispower") / "data" / path
    return str(bundled) if bundled.is_file() else path


def parse_scene(path):
    path = _resolve(path)
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SceneFileError(f"{path}: invalid JSON ({exc})") from None
    return scene_from_dict(doc)


def _atomic_write(path, data, mode="w"):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, mode) as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def _svg_plot(rows, spec):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    matplotlib.rcParams["svg.hashsalt"] = "rispower"
    x = [r.value for r in rows]
    fig, ax = plt.subplots(figsize=(6, 4))
    for m in spec.models:
        ax.plot(x, [r.attenuation_db[m] for r in rows], label=m)
    ax.set_xlabel({"d1": "d1 (m)", "d2": "d2 (m)", "theta2": "theta2 (deg)"}[spec.parameter])
    ax.set_ylabel("Pr/Pt (dB)")
    ax.grid(True, alpha=0.3)
    ax.legend()
    buf = io.StringIO()
    fig.savefig(buf, format="svg", metadata={"Date": None})
    plt.close(fig)
    return buf.getvalue()


def _describe(scene):
    lay = scene.layout
    return (
        f"scene: {lay.rows}x{lay.cols} elements, f={scene.frequency / 1e9:g} GHz, "
        f"d1={scene.tx.d:g} m, theta1={scene.tx.theta_deg:g} deg, "
        f"d2={scene.rx.d:g} m, theta2={scene.rx.theta_deg:g} deg"
    )


def cmd_eval(args):
    scene = parse_scene(args.scene)
    res, _ = experiments.configured_power(scene, args.config, reference_scan=args.reference_scan)
    spec = specular_power(scene, args.mu_bar)
    print(_describe(scene))
    print(f"configuration: {args.config}")
    print(f"proposed: pr={res.pr:.6e} W attenuation={res.attenuation_db:.4f} dB")
    print(f"specular: pr={spec.pr:.6e} W attenuation={spec.attenuation_db:.4f} dB")
    return 0


def cmd_sweep(args):
    scene = parse_scene(args.scene)
    spec = experiments.SweepSpec(
        parameter=args.param,
        start=args.start,
        stop=args.stop,
        steps=args.steps,
        models=tuple(args.models),
        configuration=args.config,
        frozen=args.frozen,
        reference_scan=args.reference_scan,
        mu_bar=args.mu_bar,
    )
    rows = experiments.run_sweep(scene, spec)
    text = experiments.format_sweep_csv(rows, spec.models)
    svg = _svg_plot(rows, spec) if args.plot else None
    if args.out:
        _atomic_write(args.out, text)
        print(f"wrote {len(rows)} rows to {args.out}")
    else:
        sys.stdout.write(text)
    if svg is not None:
        _atomic_write(args.plot, svg)
    return 0


def cmd_configure(args):
    scene = parse_scene(args.scene)
    if args.method == "exhaustive":
        report = control.exhaustive_configure(scene)
    else:
        report = control.one_bit_configure(scene, args.reference_scan)
    control.write_states_csv(args.out, report.states)
    print(_describe(scene))
    print(f"method: {report.method}")
    if np.isfinite(report.reference_phase):
        print(f"reference phase: {np.rad2deg(report.reference_phase):.3f} deg")
    att = 10 * np.log10(report.pr / scene.pt)
    print(f"proposed: pr={report.pr:.6e} W attenuation={att:.4f} dB")
    print(f"states written to {args.out}")
    return 0


def cmd_fit(args):
    samples = read_samples_csv(args.data)
    if args.target == "phase":
        fit = fit_phase(samples)
        print(f"a={np.rad2deg(fit.a):.3f}°, b={np.rad2deg(fit.b):.3f}°")
        print(f"rms residual: {np.rad2deg(fit.rms):.3e}° over {len(fit.residuals)} samples")
    else:
        if args.scene:
            scene = parse_scene(args.scene)
            area, wavelength = scene.layout.element_area, scene.wavelength
        else:
            area, wavelength = args.area, wavelength_from_frequency(args.frequency)
        fit = fit_rcs_floor(samples, area, wavelength)
        print(f"c={fit.c:.6e} m^2")
        print(f"rms residual: {fit.rms:.3e} m^2 over {len(fit.residuals)} samples")
    return 0


def cmd_boundary(args):
    scene = parse_scene(args.scene)
    df = fraunhofer_distance(scene.layout, scene.wavelength, args.convention)
    print(f"{df:.2f} m")
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="rispower", description="Surface-aided link power model")
    sub = p.add_subparsers(dest="command", required=True)

    def scene_arg(sp, required=True):
        sp.add_argument("--scene", required=required, help="scene JSON file")

    e = sub.add_parser("eval", help="received power for one placement")
    scene_arg(e)
    e.add_argument("--config", choices=experiments.CONFIGURATIONS, default="one-bit")
    e.add_argument("--reference-scan", type=int, default=control.DEFAULT_REFERENCE_SCAN)
    e.add_argument("--mu-bar", type=float, default=1.0)
    e.set_defaults(func=cmd_eval)

    s = sub.add_parser("sweep", help="sweep d1, d2 or theta2")
    scene_arg(s)
    s.add_argument("--param", choices=experiments.PARAMETERS, required=True)
    s.add_argument("--from", dest="start", type=float, required=True)
    s.add_argument("--to", dest="stop", type=float, required=True)
    s.add_argument("--steps", type=int, default=41)
    s.add_argument("--models", nargs="+", choices=experiments.MODELS,
                   default=list(experiments.MODELS))
    s.add_argument("--config", choices=experiments.CONFIGURATIONS, default="one-bit")
    s.add_argument("--frozen", action="store_true",
                   help="configure once at the first point instead of per point")
    s.add_argument("--reference-scan", type=int, default=control.DEFAULT_REFERENCE_SCAN)
    s.add_argument("--mu-bar", type=float, default=1.0)
    s.add_argument("--out", help="CSV output file (default: standard output)")
    s.add_argument("--plot", help="SVG plot file")
    s.set_defaults(func=cmd_sweep)

    c = sub.add_parser("configure", help="1-bit surface configuration")
    scene_arg(c)
    c.add_argument("--out", required=True, help="state grid CSV")
    c.add_argument("--method", choices=("one-bit", "exhaustive"), default="one-bit")
    c.add_argument("--reference-scan", type=int, default=control.DEFAULT_REFERENCE_SCAN)
    c.set_defaults(func=cmd_configure)

    f = sub.add_parser("fit", help="fit RCS floor or phase model to samples")
    f.add_argument("--data", required=True, help="CSV with theta_deg,sigma_m2,phase_deg")
    f.add_argument("--target", choices=("rcs", "phase"), required=True)
    scene_arg(f, required=False)
    f.add_argument("--area", type=float, default=14.3e-3 * 10.27e-3,
                   help="element area in m^2 when no scene is given")
    f.add_argument("--frequency", type=float, default=5.8e9,
                   help="carrier in Hz when no scene is given")
    f.set_defaults(func=cmd_fit)

    b = sub.add_parser("boundary", help="near/far-field boundary distance")
    scene_arg(b)
    b.add_argument("--convention", choices=("effective", "as-printed"), default="effective")
    b.set_defaults(func=cmd_boundary)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, np.linalg.LinAlgError) as exc:
        print(f"rispower: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
