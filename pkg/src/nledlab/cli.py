"""Command-line front end: ``nledlab {point, exact, simulate, convergence}``.

Exit codes: 0 success, 2 configuration error, 3 numerical or physical failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import exact, forms, solver
from .errors import ConfigError, ContractViolation, NledError
from .nled import BORN_INFELD, MAXWELL, LagrangianModel, constitutive, field_scalars, stress_energy

log = logging.getLogger("nledlab")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_RUNTIME = 3

OUTPUT_ENV = "NLEDLAB_OUTPUT_DIR"
SNAPSHOT_COLUMNS = ("z", "E_x", "B_y", "D_x", "X", "Y", "Delta")
FLUID_COLUMNS = ("rho_m", "p", "u")
FORMATS = ("ndjson", "csv")

CONFIG_SCHEMA = {
    "model": {"kind", "kappa"},
    "grid": {"n", "z0", "z1"},
    "initial": {"profile", "amplitude", "width", "center", "B0"},
    "fluid": {"eos", "gamma", "rho_m0", "rho_e0", "u0"},
    "run": {"cfl", "t_end", "output_every", "dissipation"},
    "output": {"directory", "formats"},
}
REQUIRED_SECTIONS = ("model", "grid", "initial", "run")


# -- serialization -----------------------------------------------------------

def fmt_float(x):
    """17 significant digits; non-finite values become null."""
    x = float(x)
    if not math.isfinite(x):
        return "null"
    return "%.17g" % (x + 0.0)


def dumps(obj):
    """JSON text with every float written at 17 significant digits."""
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {dumps(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)) or (isinstance(obj, np.ndarray) and obj.ndim):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    if isinstance(obj, (bool, np.bool_)) or obj is None or isinstance(obj, str):
        return json.dumps(obj if not isinstance(obj, np.bool_) else bool(obj))
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    return fmt_float(np.asarray(obj, dtype=float).item())


def write_snapshot(path, snap):
    cols = list(SNAPSHOT_COLUMNS) + [c for c in FLUID_COLUMNS if c in snap]
    data = np.column_stack([snap[c] for c in cols])
    with open(path, "w", newline="") as fh:
        fh.write(",".join(cols) + "\n")
        for row in data:
            fh.write(",".join(fmt_float(v) for v in row) + "\n")


# -- configuration -------------------------------------------------------------

def parse_config(doc):
    """Validate a config document and build a RunConfig plus output options."""
    if not isinstance(doc, dict):
        raise ConfigError("config must be a JSON object")
    unknown = set(doc) - set(CONFIG_SCHEMA)
    if unknown:
        raise ConfigError(f"unknown config sections: {sorted(unknown)}")
    for name in REQUIRED_SECTIONS:
        if name not in doc:
            raise ConfigError(f"missing config section {name!r}")
    for name, section in doc.items():
        if section is None and name == "fluid":
            continue
        if not isinstance(section, dict):
            raise ConfigError(f"section {name!r} must be an object")
        extra = set(section) - CONFIG_SCHEMA[name]
        if extra:
            raise ConfigError(f"unknown keys in {name!r}: {sorted(extra)}")

    def num(section, key, default=None, kind=float):
        value = doc.get(section, {}).get(key, default)
        if value is None:
            raise ConfigError(f"{section}.{key} is required")
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"{section}.{key} must be a number")
        if kind is int:
            if int(value) != value:
                raise ConfigError(f"{section}.{key} must be an integer")
            return int(value)
        if not math.isfinite(value):
            raise ConfigError(f"{section}.{key} must be finite")
        return float(value)

    model = doc["model"]
    kind = model.get("kind", BORN_INFELD)
    if not isinstance(kind, str):
        raise ConfigError("model.kind must be a string")
    initial = doc["initial"]
    profile = initial.get("profile", "gaussian")
    if not isinstance(profile, str):
        raise ConfigError("initial.profile must be a string")

    dust = None
    if doc.get("fluid") is not None:
        fl = doc["fluid"]
        eos = fl.get("eos", "dust")
        gamma = fl.get("gamma")
        dust = solver.DustConfig(
            rho_m0=num("fluid", "rho_m0", 1.0), u0=num("fluid", "u0", 0.0),
            rho_e0=num("fluid", "rho_e0", 0.0), eos=eos,
            gamma=None if gamma is None else num("fluid", "gamma"))

    out = doc.get("output", {})
    formats = out.get("formats", list(FORMATS))
    if not isinstance(formats, list) or any(f not in FORMATS for f in formats):
        raise ConfigError(f"output.formats must be a list drawn from {list(FORMATS)}")
    directory = out.get("directory", "nledlab_output")
    if not isinstance(directory, str):
        raise ConfigError("output.directory must be a string")

    try:
        cfg = solver.RunConfig(
            kind=kind, kappa=num("model", "kappa", 0.0),
            n=num("grid", "n", kind=int), z0=num("grid", "z0", 0.0), z1=num("grid", "z1", 1.0),
            profile=profile, amplitude=num("initial", "amplitude", 1.0),
            width=num("initial", "width", 1.0), center=num("initial", "center", 0.0),
            B0=num("initial", "B0", 0.0),
            cfl=num("run", "cfl", 0.5), t_end=num("run", "t_end"),
            output_every=num("run", "output_every", 0, kind=int),
            dissipation=num("run", "dissipation", 0.0), fluid=dust)
        # fail early on a bound violation in the initial data
        solver.exact_state(cfg, 0.0)
    except ContractViolation as exc:
        raise ConfigError(exc.message) from None
    return cfg, {"directory": directory, "formats": formats}


def load_config(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed JSON in {path}: {exc}") from None
    return parse_config(doc)


def output_directory(options, override=None):
    return Path(override or os.environ.get(OUTPUT_ENV) or options["directory"])


# -- subcommands -----------------------------------------------------------------

def _model_from_args(args):
    try:
        return LagrangianModel(args.kind, args.kappa, args.eps0)
    except ContractViolation as exc:
        raise ConfigError(exc.message) from None


def cmd_point(args):
    model = _model_from_args(args)
    F = forms.two_form_from_eb(args.e, args.b)
    X, Y, sc = field_scalars(model, F)
    G = constitutive(model, F)
    d, h = forms.eb_from_two_form(G)
    report = {
        "X": X, "Y": Y, "Delta": sc.Delta, "L": sc.L, "M": sc.M,
        "N": sc.N, "Lsc": sc.Lsc,
        "G": {"components": G.comps, "order": ["tx", "ty", "tz", "xy", "xz", "yz"],
              "d": d, "h": h},
        "T_upper": stress_energy(model, F),
    }
    print(dumps(report))
    return EXIT_OK


def cmd_exact(args):
    try:
        design = exact.ExperimentDesign(args.L0, args.B, args.kappa, args.resolution)
    except ContractViolation as exc:
        raise ConfigError(exc.message) from None
    report = exact.experiment_report(design)
    report["interpretation"] = args.interpretation
    report["tau_exact_s"] = report[args.interpretation]["tau_exact_s"]
    report["v_over_c"] = report[args.interpretation]["v_over_c"]
    if args.format == "json":
        print(dumps(report))
    else:
        print("interpretation,v_over_c,slowdown_parameter,tau_exact_s,tau_linear_s,"
              "kappa_bound,kappa_electron_radius")
        for interp in exact.INTERPRETATIONS:
            r = report[interp]
            bound = r["kappa_bound"] if r["kappa_bound"] is not None else math.nan
            print(",".join([interp] + [fmt_float(v) for v in (
                r["v_over_c"], r["slowdown_parameter"], r["tau_exact_s"],
                report["tau_linear_s"], bound, report["kappa_electron_radius"])]))
    return EXIT_OK


def _summary(result, error=None):
    try:
        speed = solver.measure_phase_speed(result)
    except NledError:
        speed = None
    last = result.records[-1] if result.records else {}
    return {
        "completed": result.completed,
        "error": error,
        "nsteps": result.nsteps,
        "dt": result.dt,
        "phase_speed": speed,
        "energy_drift": result.energy_drift(),
        "final_divT_residual": last.get("divT_residual"),
        "final_max_delta_excursion": last.get("max_delta_excursion"),
        "final_t": last.get("t"),
    }


def cmd_simulate(args):
    cfg, options = load_config(args.config)
    outdir = output_directory(options, args.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    formats = options["formats"]
    diag = open(outdir / "diagnostics.ndjson", "w") if "ndjson" in formats else None

    def on_output(k, record, snap):
        if diag is not None:
            diag.write(dumps({f: record[f] for f in solver.DIAGNOSTIC_FIELDS}) + "\n")
            diag.flush()
        if "csv" in formats:
            write_snapshot(outdir / f"snapshot_{k}.csv", snap)

    code = EXIT_OK
    try:
        result = solver.run(cfg, callback=on_output, keep_snapshots=False)
        summary = _summary(result)
    except NledError as exc:
        partial = getattr(exc, "partial", None)
        summary = _summary(partial, str(exc)) if partial is not None else {"error": str(exc)}
        print(f"runtime error: {exc}", file=sys.stderr)
        code = EXIT_RUNTIME
    finally:
        if diag is not None:
            diag.close()
    (outdir / "summary.json").write_text(dumps(summary) + "\n")
    return code


def cmd_convergence(args):
    if len(args.levels) < 3:
        raise ConfigError("convergence needs at least 3 levels")
    if any(n < 8 for n in args.levels):
        raise ConfigError("every level needs n >= 8")
    cfg, _ = load_config(args.config)
    report = solver.convergence_study(cfg, args.levels)
    print(dumps(report))
    return EXIT_OK


# -- entry point ---------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="nledlab", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = p.add_subparsers(dest="command", required=True)

    pt = sub.add_parser("point", help="scalars, excitation and stress-energy at one field value")
    pt.add_argument("--e", nargs=3, type=float, default=[0.0, 0.0, 0.0], metavar=("EX", "EY", "EZ"))
    pt.add_argument("--b", nargs=3, type=float, default=[0.0, 0.0, 0.0], metavar=("BX", "BY", "BZ"))
    pt.add_argument("--kind", choices=[MAXWELL, BORN_INFELD], default=BORN_INFELD)
    pt.add_argument("--kappa", type=float, default=0.0)
    pt.add_argument("--eps0", type=float, default=1.0)
    pt.set_defaults(func=cmd_point)

    ex = sub.add_parser("exact", help="SI transit delay and kappa bounds for a magnet")
    ex.add_argument("--L0", type=float, required=True, help="magnet length in metres")
    ex.add_argument("--B", type=float, required=True, help="field value")
    ex.add_argument("--kappa", type=float, required=True, help="coupling in SI units")
    ex.add_argument("--resolution", type=float, default=1e-12, help="timing resolution in seconds")
    ex.add_argument("--interpretation", choices=exact.INTERPRETATIONS, default=exact.TESLA)
    ex.add_argument("--format", choices=["json", "csv"], default="json")
    ex.set_defaults(func=cmd_exact)

    sm = sub.add_parser("simulate", help="run a JSON-configured simulation")
    sm.add_argument("config")
    sm.add_argument("-o", "--output-dir", default=None)
    sm.set_defaults(func=cmd_simulate)

    cv = sub.add_parser("convergence", help="grid-refinement study against the exact wave")
    cv.add_argument("config")
    cv.add_argument("--levels", nargs="+", type=int, default=[128, 256, 512])
    cv.set_defaults(func=cmd_convergence)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (ConfigError, ContractViolation) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NledError as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
