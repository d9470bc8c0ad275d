"""Command-line front end.

    fockcp sweep --config run.toml --out shifts.csv --compare near-field
    fockcp sweep --preset fig5 --format json --parallel
    fockcp validate --config run.toml

Exit status: 0 success, 2 configuration error, 3 resonant drive,
4 quadrature tolerance not met (partial output removed).
"""

from __future__ import annotations

import argparse
import datetime as _dt
import json
import math
import os
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__
from .config import PRESETS, RunConfig, load_config
from .errors import ConfigError, ResonantDrive, ToleranceNotMet
from .potential import pc_asymptotic, pc_decompose, shift_general
from .quadrature import QuadratureSettings
from .units import (CONSTANTS, RESONANCE_GUARD, Scenario, classical_intensity,
                    polarizability, to_natural, zeta)

EXIT_OK, EXIT_CONFIG, EXIT_RESONANT, EXIT_TOLERANCE = 0, 2, 3, 4

COMPARE_COLUMNS = {
    "near-field": "near_field_J",
    "retarded": "retarded_J",
    "prior-model": "prior_model_J",
}


def _fmt(x: float) -> str:
    return f"{x:.16e}"


def columns(cfg: RunConfig, compare: list[str]) -> list[str]:
    cols = ["z_m", "zeta"]
    single = len(cfg.media) == 1
    for label, _ in cfg.media:
        suffix = "" if single else f"_{label}"
        cols += [f"shift_tr_J{suffix}", f"shift_ev_J{suffix}", f"shift_total_J{suffix}"]
    cols += [COMPARE_COLUMNS[c] for c in compare]
    return cols


def compute_row(cfg: RunConfig, z: float, compare: list[str]) -> list[float]:
    """One output row: z, zeta, (tr, ev, total) per medium, then comparison columns."""
    row = [z, zeta(cfg.drive.omega_l, z)]
    for _, medium in cfg.media:
        res = shift_general(Scenario(cfg.atom, cfg.drive, medium, z), cfg.quadrature)
        row += [res.traveling, res.evanescent, res.total]
    if compare:
        ref = Scenario(cfg.atom, cfg.drive, cfg.media[0][1], z)
        for c in compare:
            if c == "near-field":
                row.append(pc_asymptotic("nearField", ref))
            elif c == "retarded":
                row.append(pc_asymptotic("retarded", ref))
            else:
                row.append(pc_decompose(ref).term_cos3)
    return row


def _row_task(args):
    return compute_row(*args)


def header_lines(cfg: RunConfig, compare: list[str]) -> list[str]:
    a, d = cfg.atom, cfg.drive
    k = CONSTANTS
    lines = [
        f"fockcp {__version__}",
        f"generated: {_dt.datetime.now(_dt.timezone.utc).isoformat(timespec='seconds')}",
        f"source: {cfg.source}",
        f"constants (CODATA 2018): hbar = {k.hbar!r} J s, c = {k.c!r} m/s, "
        f"epsilon0 = {k.epsilon0!r} F/m",
        "units: z_m [m], zeta [1], shift_* and comparison columns [J]",
        f"atom.omega0_rad_per_s = {a.omega0!r}",
        f"atom.dx2_c2m2 = {a.dx2!r}",
        f"atom.dy2_c2m2 = {a.dy2!r}",
        f"atom.dz2_c2m2 = {a.dz2!r}",
        f"drive.omega_rad_per_s = {d.omega_l!r}",
    ]
    if d.photons is not None:
        lines.append(f"drive.photons = {d.photons}")
    else:
        lines.append(f"drive.intensity_w_per_m2 = {d.classical_intensity!r}")
    lines += [
        f"drive.ex2_v2_per_m2 = {d.ex2!r}",
        f"drive.ey2_v2_per_m2 = {d.ey2!r}",
        f"drive.ez2_v2_per_m2 = {d.ez2!r}",
        "medium = " + ", ".join(f"{label} ({medium})" for label, medium in cfg.media),
        f"sweep = {cfg.sweep.z_min!r} .. {cfg.sweep.z_max!r} m, {cfg.sweep.points} points, "
        f"{cfg.sweep.spacing}",
        f"quadrature.rel_tol = {cfg.quadrature.rel_tol!r}",
        f"quadrature.abs_tol = {cfg.quadrature.abs_tol!r}",
        f"quadrature.max_panels = {cfg.quadrature.max_panels}",
        f"quadrature.oscillations_per_panel = {cfg.quadrature.oscillations_per_panel!r}",
    ]
    if compare:
        lines.append("compare = " + ", ".join(compare))
    return lines


def _apply_env(cfg: RunConfig) -> RunConfig:
    value = os.environ.get("FOCKCP_RELTOL")
    if not value:
        return cfg
    try:
        rel = float(value)
        quad = QuadratureSettings(rel, cfg.quadrature.abs_tol, cfg.quadrature.max_panels,
                                  cfg.quadrature.oscillations_per_panel)
    except ValueError:
        raise ConfigError(f"FOCKCP_RELTOL must be a positive number, got {value!r}") from None
    return RunConfig(cfg.atom, cfg.drive, cfg.media, cfg.sweep, quad, cfg.raw, cfg.source)


def _check_compare(cfg: RunConfig, compare: list[str]) -> None:
    if not compare:
        return
    a, d = cfg.atom, cfg.drive
    if a.dy2 or a.dz2 or d.ey2 or d.ez2:
        raise ConfigError("--compare needs drive and dipole both along x", field="atom/drive")


def _write(out, cfg, compare, cols, rows, fmt):
    if fmt == "csv":
        for line in header_lines(cfg, compare):
            out.write(f"# {line}\n")
        out.write(",".join(cols) + "\n")
        for row in rows:
            out.write(",".join(_fmt(v) for v in row) + "\n")
    else:
        head = header_lines(cfg, compare)
        doc = {
            "tool": "fockcp",
            "version": __version__,
            "generated": head[1].split(": ", 1)[1],
            "header": head,
            "columns": cols,
            "rows": [[float(_fmt(v)) for v in row] for row in rows],
        }
        json.dump(doc, out, indent=1)
        out.write("\n")


def cmd_sweep(args) -> int:
    cfg = _apply_env(load_config(args.config, args.preset))
    compare = list(dict.fromkeys(args.compare or []))
    _check_compare(cfg, compare)
    grid = [float(z) for z in cfg.sweep.grid()]
    tasks = [(cfg, z, compare) for z in grid]
    if args.parallel:
        with ProcessPoolExecutor() as pool:
            rows = list(pool.map(_row_task, tasks, chunksize=max(1, len(tasks) // 64)))
    else:
        rows = [compute_row(*t) for t in tasks]
    cols = columns(cfg, compare)
    if args.out is None:
        _write(sys.stdout, cfg, compare, cols, rows, args.format)
        return EXIT_OK
    out_path = Path(args.out)
    tmp = out_path.with_name(out_path.name + ".partial")
    try:
        with open(tmp, "w", newline="") as fh:
            _write(fh, cfg, compare, cols, rows, args.format)
        os.replace(tmp, out_path)
    finally:
        if tmp.exists():
            tmp.unlink()
    return EXIT_OK


def cmd_validate(args) -> int:
    cfg = load_config(args.config, args.preset)
    a, d = cfg.atom, cfg.drive
    print(f"configuration: {cfg.source}")
    print("SI units")
    print(f"  atom.omega0          = {a.omega0:.6e} rad/s")
    print(f"  atom.|d|^2 (x,y,z)   = {a.dx2:.6e}, {a.dy2:.6e}, {a.dz2:.6e} C^2 m^2")
    print(f"  atom.|d|             = {math.sqrt(a.d2):.6e} C m")
    print(f"  drive.omega_L        = {d.omega_l:.6e} rad/s")
    if d.photons is not None:
        print(f"  drive.photons        = {d.photons}")
    print(f"  drive.intensity      = {classical_intensity(d):.6e} W/m^2 "
          f"({classical_intensity(d) * 1e-4:.6g} W/cm^2, classical)")
    print(f"  drive.E^2 (x,y,z)    = {d.ex2:.6e}, {d.ey2:.6e}, {d.ez2:.6e}")
    print("  medium               = " + ", ".join(f"{m}" for _, m in cfg.media))
    print(f"  sweep                = {cfg.sweep.z_min:.6e} .. {cfg.sweep.z_max:.6e} m, "
          f"{cfg.sweep.points} points, {cfg.sweep.spacing}")
    print(f"  zeta range           = {zeta(d.omega_l, cfg.sweep.z_min):.6e} .. "
          f"{zeta(d.omega_l, cfg.sweep.z_max):.6e}")
    nat = to_natural(Scenario(a, d, cfg.media[0][1], cfg.sweep.z_min))
    print("natural units (hbar = c = eps0 = 1, lengths in m)")
    print(f"  omega0               = {nat.omega0:.6e} 1/m")
    print(f"  omega_L              = {nat.omega_l:.6e} 1/m")
    print(f"  |d|^2 (x,y,z)        = {nat.dx2:.6e}, {nat.dy2:.6e}, {nat.dz2:.6e} m^2")
    nfield = nat.photon_weighted_field()
    print(f"  N_L E^2 (x,y,z)      = {nfield[0]:.6e}, {nfield[1]:.6e}, {nfield[2]:.6e} 1/m^3")
    detuning = abs(a.omega0 - d.omega_l) / a.omega0
    print(f"relative detuning      = {detuning:.6e}")
    if detuning == 0.0:
        print("ERROR: drive.omega_rad_per_s equals atom.omega0_rad_per_s (resonant drive)",
              file=sys.stderr)
        return EXIT_CONFIG
    if detuning < RESONANCE_GUARD:
        print(f"WARNING: detuning inside the resonance guard band ({RESONANCE_GUARD:g})")
    with warnings.catch_warnings():
        # the guard band was reported above
        warnings.simplefilter("ignore", RuntimeWarning)
        alpha = polarizability(a, d.omega_l)
    print(f"polarizability         = {alpha:.6e} C^2 m^2/J")
    print("OK")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fockcp", description=__doc__.split("\n")[0] if __doc__ else None)
    ap.add_argument("--version", action="version", version=f"fockcp {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    sw = sub.add_parser("sweep", help="evaluate the shift over a distance sweep")
    sw.add_argument("--config", help="TOML configuration file")
    sw.add_argument("--preset", choices=PRESETS, help="embedded configuration")
    sw.add_argument("--out", help="output file (default: stdout)")
    sw.add_argument("--compare", action="append", choices=sorted(COMPARE_COLUMNS),
                    help="add a comparison column (repeatable)")
    sw.add_argument("--parallel", action="store_true", help="evaluate rows in worker processes")
    sw.add_argument("--format", choices=("csv", "json"), default="csv")
    sw.set_defaults(func=cmd_sweep)

    va = sub.add_parser("validate", help="check a configuration and print the resolved scenario")
    va.add_argument("--config", help="TOML configuration file")
    va.add_argument("--preset", choices=PRESETS, help="embedded configuration")
    va.set_defaults(func=cmd_validate)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"fockcp: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ResonantDrive as exc:
        print(f"fockcp: {exc}", file=sys.stderr)
        return EXIT_RESONANT
    except ToleranceNotMet as exc:
        print(f"fockcp: quadrature did not converge: {exc}", file=sys.stderr)
        return EXIT_TOLERANCE


if __name__ == "__main__":
    sys.exit(main())
