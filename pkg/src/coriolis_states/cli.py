"""Command-line front end.

Subcommands: ``rotate``, ``spectrum``, ``wavefunction``, ``ac-phase`` and
``report``. Exit codes: 0 ok, 1 I/O error, 2 usage or validation error,
3 numerical failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from . import aharonov_carmi as acp
from .analytic import (
    Grid1D,
    QuantumNumbers,
    eigenfunction,
    energy_level,
    guiding_center,
)
from .errors import NumericalFailure, ValidationError
from .rotor import RotationGenerator, evolve_rodrigues, evolve_series, evolve_time_dependent, vec3
from .spectral import convergence_order, convergence_study, solve_spectrum
from .units import CODATA2018, JOULE_PER_MEV, coriolis_radius, make_frame_params

SUBCOMMANDS = ("rotate", "spectrum", "wavefunction", "ac-phase", "report")
ROTATE_METHODS = ("rodrigues", "series", "piecewise-rodrigues", "rk4", "magnus2")
MAX_LEVELS = 11

EXIT_OK, EXIT_IO, EXIT_USAGE, EXIT_NUMERICAL = 0, 1, 2, 3

NOTES = [
    "Area 3e-9 m^2 together with Omega = 1e11 rad/s gives a phase of ~5.2e6 rad, "
    "not ~1 mrad; an area of order 1e-19 m^2 (C60 cross-section ~3.8e-19 m^2) "
    "gives ~5e-4 rad. Both values are reported.",
    "Ladder operators use a = C/(sqrt(2) hbar) (Pi_x + i Pi_y): the prefactor "
    "C/sqrt(2 hbar) is short by sqrt(hbar) and the opposite sign assignment "
    "gives [a, a+] = -hbar instead of +1.",
    "The curl of the gauge potential (0, 2 Omega x, 0) is 2 Omega z = Omega_tilde z, "
    "not Omega z.",
    "The valence-electron Hamiltonian (p - 2 m_e Gamma)^2 / 2 m_e is compared with "
    "the force law; the matching object is the minimal-coupling Hamiltonian.",
    "'Coriolis radius as rms width' holds for the amplitude exp(-(x-x_c)^2/2C^2); "
    "the density |Phi_0|^2 has standard deviation C/sqrt(2).",
    "Delta E = 2 hbar Omega at 1e11 rad/s is 0.13164 meV with CODATA 2018 hbar.",
]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


@dataclass
class Command:
    subcommand: str
    options: dict = field(default_factory=dict)
    output: str | None = None
    format: str = "csv"


def _vector(text):
    try:
        parts = [float(p) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected 3 components, got {len(parts)}")
    return parts


def _int_list(text):
    try:
        return [int(p) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _build_parser():
    parser = _Parser(prog="coriolis", description="Coriolis quantum states toolkit")
    sub = parser.add_subparsers(dest="subcommand", metavar="{" + ",".join(SUBCOMMANDS) + "}")

    def add(name, help_text, default_format):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--output", "-o", default=None, help="output path (default: stdout)")
        p.add_argument("--format", choices=("csv", "json"), default=default_format)
        return p

    def frame_opts(p):
        p.add_argument("--mass", type=float, default=CODATA2018.electron_mass, help="kg")
        p.add_argument("--omega", type=float, default=1e11, help="rad/s")

    p = add("rotate", "evolve a vector under dR/dt = O x R", "csv")
    p.add_argument("--axis", type=_vector, default=[0.0, 0.0, 1.0], help="generator O (rad/s)")
    p.add_argument("--r0", type=_vector, default=[1.0, 0.0, 0.0])
    p.add_argument("--t", type=float, default=math.pi, help="final time (s)")
    p.add_argument("--method", choices=ROTATE_METHODS, default="rodrigues")
    p.add_argument("--steps", type=int, default=1000, help="integrator steps")
    p.add_argument("--terms", type=int, default=60, help="series terms")
    p.add_argument("--points", type=int, default=11, help="trajectory samples")
    p.add_argument(
        "--precession", type=float, default=0.0,
        help="rate (rad/s) at which the generator precesses about z",
    )

    p = add("spectrum", "numeric vs analytic level table", "csv")
    frame_opts(p)
    p.add_argument("--ky", type=float, default=0.0, help="1/m")
    p.add_argument("--levels", type=int, default=6)
    p.add_argument("--grid", type=int, default=4000)
    p.add_argument("--half-width", type=float, default=12.0, help="in Coriolis radii")
    p.add_argument("--no-extrapolate", action="store_true")

    p = add("wavefunction", "sample a Coriolis eigenstate", "csv")
    frame_opts(p)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--ky", type=float, default=0.0)
    p.add_argument("--y", type=float, default=0.0, help="m")
    p.add_argument("--grid", type=int, default=1024)
    p.add_argument("--half-width", type=float, default=12.0, help="in Coriolis radii")

    p = add("ac-phase", "Aharonov-Carmi phase and level shift", "json")
    p.add_argument("--mass", type=float, default=CODATA2018.electron_mass)
    p.add_argument("--omega-vec", type=_vector, default=None, help="rad/s")
    p.add_argument("--area-vec", type=_vector, default=None, help="m^2")
    p.add_argument("--printed-area", action="store_true", help="use 3e-9 m^2 instead of 3e-19 m^2")

    p = add("report", "all headline numbers as one JSON document", "json")
    frame_opts(p)
    p.add_argument("--ky", type=float, default=0.0)
    p.add_argument("--levels", type=int, default=6)
    p.add_argument("--grid", type=int, default=4000)
    p.add_argument("--half-width", type=float, default=12.0)
    p.add_argument("--study-grids", type=_int_list, default=[500, 1000, 2000, 4000])
    return parser


def _positive(opts, *names):
    for name in names:
        value = opts[name]
        if not (math.isfinite(value) and value > 0):
            raise ValidationError(name, f"must be > 0, got {value!r}")


def _validate(cmd: Command):
    o = cmd.options
    s = cmd.subcommand
    if s == "rotate":
        vec3(o["axis"], "axis")
        vec3(o["r0"], "r0")
        if not math.isfinite(o["t"]):
            raise ValidationError("t", "must be finite")
        _positive(o, "steps", "terms", "points")
        if o["points"] < 2:
            raise ValidationError("points", "need at least 2 trajectory samples")
        if o["precession"] != 0.0 and o["method"] in ("rodrigues", "series"):
            raise ValidationError("method", "a precessing generator needs piecewise-rodrigues, rk4 or magnus2")
    if s in ("spectrum", "wavefunction", "report"):
        _positive(o, "mass", "omega", "grid", "half_width")
        if not math.isfinite(o["ky"]):
            raise ValidationError("ky", "must be finite")
    if s in ("spectrum", "report"):
        if not 1 <= o["levels"] <= MAX_LEVELS:
            raise ValidationError("levels", f"must be between 1 and {MAX_LEVELS}")
        if o["grid"] < 64:
            raise ValidationError("grid", "must be >= 64")
    if s == "wavefunction":
        if o["n"] < 0:
            raise ValidationError("n", "must be >= 0")
        if o["grid"] < 3:
            raise ValidationError("grid", "must be >= 3")
    if s == "ac-phase":
        _positive(o, "mass")
        if o["omega_vec"] is not None and not np.any(o["omega_vec"]):
            raise ValidationError("omega_vec", "must be non-zero")
    if s == "report":
        if cmd.format != "json":
            raise ValidationError("format", "report is emitted as JSON only")
        grids = o["study_grids"]
        if len(grids) < 3 or any(b <= a for a, b in zip(grids, grids[1:])) or grids[0] < 64:
            raise ValidationError("study_grids", "need >= 3 ascending sizes, each >= 64")


def parse_command(argv) -> Command:
    """Parse and validate ``argv`` (without the program name).

    Raises :class:`UsageError` for unknown subcommands or flags and
    :class:`~coriolis_states.errors.ValidationError` for out-of-range values.
    """
    parser = _build_parser()
    ns = parser.parse_args(list(argv))
    if ns.subcommand is None:
        raise UsageError(parser.format_usage() + "coriolis: error: a subcommand is required: " + ", ".join(SUBCOMMANDS))
    opts = vars(ns).copy()
    sub = opts.pop("subcommand")
    output = opts.pop("output")
    fmt = opts.pop("format")
    cmd = Command(subcommand=sub, options=opts, output=output, format=fmt)
    _validate(cmd)
    return cmd


# serialisation ---------------------------------------------------------------

def _json_value(value, indent, level):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if value is None:
        return "null"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if not math.isfinite(value):
            raise ValueError("non-finite float in JSON output")
        return format(value, ".17g")
    if isinstance(value, str):
        import json

        return json.dumps(value, ensure_ascii=False)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{pad}{_json_value(str(k), indent, level + 1)}: {_json_value(v, indent, level + 1)}"
                 for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(value, (list, tuple, np.ndarray)):
        if len(value) == 0:
            return "[]"
        items = [pad + _json_value(v, indent, level + 1) for v in value]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(value).__name__}")


def to_json(doc) -> str:
    """JSON text with floats written to 17 significant digits."""
    return _json_value(doc, 2, 0) + "\n"


def to_csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format(v, ".12g") if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()


def _provenance(area_choice="not applicable"):
    return {
        "constants": CODATA2018.name,
        "hbar": CODATA2018.hbar,
        "electron_mass": CODATA2018.electron_mass,
        "joule_per_mev": JOULE_PER_MEV,
        "area_choice": area_choice,
    }


# subcommands -----------------------------------------------------------------

def _run_rotate(o):
    axis = np.array(o["axis"])
    r0 = np.array(o["r0"])
    times = np.linspace(0.0, o["t"], o["points"])
    method = o["method"]
    traj = []
    if method in ("rodrigues", "series"):
        for t in times:
            r = evolve_rodrigues(axis, r0, t) if method == "rodrigues" else evolve_series(axis, r0, t, o["terms"])
            traj.append(r)
    else:
        rate = o["precession"]
        if rate == 0.0:
            gen = RotationGenerator.constant(axis)
        else:
            def generator(t):
                c, s = math.cos(rate * t), math.sin(rate * t)
                return np.array([c * axis[0] - s * axis[1], s * axis[0] + c * axis[1], axis[2]])

            lo, hi = min(0.0, o["t"]), max(0.0, o["t"])
            gen = RotationGenerator.from_function(generator, lo, hi, max(o["steps"], 1000) + 1)
        per_segment = max(1, o["steps"] // (o["points"] - 1))
        r = r0.copy()
        traj.append(r)
        for t0, t1 in zip(times[:-1], times[1:]):
            r = evolve_time_dependent(gen, r, t1, per_segment, method, t_start=t0)
            traj.append(r)
    rows = [(float(t), *map(float, r)) for t, r in zip(times, traj)]
    header = ["t", "x", "y", "z"]
    doc = {
        "provenance": _provenance(),
        "command": "rotate",
        "method": method,
        "trajectory": [dict(zip(header, row)) for row in rows],
        "final": [float(v) for v in traj[-1]],
    }
    return header, rows, doc


def _run_spectrum(o):
    params = make_frame_params(o["mass"], o["omega"])
    res = solve_spectrum(
        params, o["ky"], o["grid"], o["half_width"], o["levels"], extrapolate=not o["no_extrapolate"]
    )
    header = ["n", "eps_numeric", "eps_raw", "eps_exact", "abs_error", "energy_J", "energy_exact_J", "overlap"]
    rows = [
        (n, float(res.eps[n]), float(res.eps_raw[n]), n + 0.5, float(res.abs_errors[n]),
         float(res.energies[n]), float(res.exact_energies[n]), float(res.overlaps[n]))
        for n in range(o["levels"])
    ]
    doc = {
        "provenance": _provenance(),
        "command": "spectrum",
        "n_points": o["grid"],
        "half_width": o["half_width"],
        "extrapolated": res.extrapolated,
        "coriolis_radius_m": coriolis_radius(params),
        "levels": [dict(zip(header, row)) for row in rows],
    }
    return header, rows, doc


def _run_wavefunction(o):
    params = make_frame_params(o["mass"], o["omega"])
    c = coriolis_radius(params)
    xc = guiding_center(params, o["ky"])
    grid = Grid1D.symmetric(o["half_width"] * c, o["grid"], center=xc)
    x = grid.points()
    psi = eigenfunction(params, QuantumNumbers(o["n"], o["ky"]), x, o["y"])
    header = ["x", "re", "im", "density"]
    rows = [(float(xi), float(p.real), float(p.imag), float(abs(p) ** 2)) for xi, p in zip(x, psi)]
    doc = {
        "provenance": _provenance(),
        "command": "wavefunction",
        "n": o["n"],
        "k_y": o["ky"],
        "coriolis_radius_m": c,
        "guiding_center_m": xc,
        "samples": [dict(zip(header, row)) for row in rows],
    }
    return header, rows, doc


def _ac_doc(result, scenario):
    return {
        "label": scenario.label,
        "mass_kg": scenario.mass,
        "omega_vec_rad_s": [float(v) for v in scenario.omega_vec],
        "area_vec_m2": [float(v) for v in scenario.area_vec],
        "phase_rad": result.phase,
        "energy_shift_J": result.energy_shift,
        "energy_shift_mev": result.energy_shift_mev,
        "coriolis_radius_m": result.coriolis_radius,
        "notes": list(result.notes),
    }


def _run_ac_phase(o):
    preset = acp.fullerene_preset(o["printed_area"])
    scenario = acp.ACScenario(
        omega_vec=o["omega_vec"] if o["omega_vec"] is not None else preset.omega_vec,
        area_vec=o["area_vec"] if o["area_vec"] is not None else preset.area_vec,
        mass=o["mass"],
        label=preset.label if o["area_vec"] is None else "custom area",
    )
    result = acp.evaluate(scenario)
    doc = {"provenance": _provenance(scenario.label), "command": "ac-phase", **_ac_doc(result, scenario)}
    header = ["quantity", "value"]
    rows = [(k, v) for k, v in doc.items() if isinstance(v, float)]
    return header, rows, doc


def _run_report(o):
    params = make_frame_params(o["mass"], o["omega"])
    spec = solve_spectrum(params, o["ky"], o["grid"], o["half_width"], o["levels"])
    levels = []
    for n in range(o["levels"]):
        exact = energy_level(params, n)
        levels.append({
            "n": n,
            "energy_exact_J": exact,
            "energy_exact_mev": exact / JOULE_PER_MEV,
            "eps_numeric": float(spec.eps[n]),
            "eps_raw": float(spec.eps_raw[n]),
            "abs_error": float(spec.abs_errors[n]),
            "overlap": float(spec.overlaps[n]),
        })
    study_levels = min(3, o["levels"])
    rows = convergence_study(params, o["ky"], o["study_grids"], study_levels, o["half_width"])
    omega_vec = np.array([0.0, 0.0, o["omega"]])
    ac = {}
    for key, printed in (("default", False), ("printed", True)):
        preset = acp.fullerene_preset(printed)
        scenario = acp.ACScenario(omega_vec, preset.area_vec, o["mass"], preset.label)
        ac[key] = (scenario, acp.evaluate(scenario))
    shift = acp.ac_energy_shift(params)
    doc = {
        "provenance": _provenance("both: default 3e-19 m^2 (C60 cross-section) and printed 3e-9 m^2"),
        "command": "report",
        "parameters": {
            "mass_kg": params.m, "omega_rad_s": params.omega, "omega_tilde_rad_s": params.omega_tilde,
            "k_y_per_m": o["ky"], "n_points": o["grid"], "half_width": o["half_width"],
        },
        "coriolis_radius_m": coriolis_radius(params),
        "guiding_center_m": guiding_center(params, o["ky"]),
        "energy_levels": levels,
        "spectrum_extrapolated": spec.extrapolated,
        "delta_e_J": shift,
        "delta_e_mev": shift / JOULE_PER_MEV,
        "ac_phase_default_rad": ac["default"][1].phase,
        "ac_phase_printed_rad": ac["printed"][1].phase,
        "ac_phase_printed_consistent": False,
        "ac_default": _ac_doc(ac["default"][1], ac["default"][0]),
        "ac_printed": _ac_doc(ac["printed"][1], ac["printed"][0]),
        "convergence_study": {
            "half_width": o["half_width"],
            "rows": [
                {"n_points": r.n_points, "spacing": r.spacing, "level": r.level, "eps_numeric": r.eps_numeric,
                 "abs_error": r.abs_error, "domain_limited": r.domain_limited}
                for r in rows
            ],
            "order_by_level": {str(lv): convergence_order(rows, lv) for lv in range(study_levels)},
        },
        "paper_notes": list(NOTES),
    }
    return None, None, doc


RUNNERS = {
    "rotate": _run_rotate,
    "spectrum": _run_spectrum,
    "wavefunction": _run_wavefunction,
    "ac-phase": _run_ac_phase,
    "report": _run_report,
}


def render(cmd: Command) -> str:
    header, rows, doc = RUNNERS[cmd.subcommand](cmd.options)
    if cmd.format == "json" or header is None:
        return to_json(doc)
    return to_csv(header, rows)


def execute(cmd: Command, stdout=None, stderr=None) -> int:
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    try:
        text = render(cmd)
    except NumericalFailure as exc:
        print(f"coriolis: numerical failure: {exc}", file=stderr)
        return EXIT_NUMERICAL
    except ValidationError as exc:
        print(f"coriolis: invalid value for {exc.field}: {exc}", file=stderr)
        return EXIT_USAGE
    if cmd.output is None:
        stdout.write(text)
        return EXIT_OK
    try:
        with open(cmd.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"coriolis: cannot write {cmd.output}: {exc}", file=stderr)
        return EXIT_IO
    return EXIT_OK


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cmd = parse_command(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except ValidationError as exc:
        print(f"coriolis: invalid value for {exc.field}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return execute(cmd)


if __name__ == "__main__":
    sys.exit(main())
