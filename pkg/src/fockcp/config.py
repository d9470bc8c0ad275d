"""TOML run configuration and the embedded presets.

A configuration has the sections ``atom``, ``drive``, ``medium``, ``sweep``
and ``quadrature``.  Every dimensional key names its unit::

    [atom]
    omega0_rad_per_s = 1.55e14
    dipole_c_m = 5.85e-29          # or dx2_c2m2 / dy2_c2m2 / dz2_c2m2
    dipole_axis = "x"

    [drive]
    omega_rad_per_s = 1.50e14
    intensity_w_per_cm2 = 5.0      # or intensity_w_per_m2, or photons = N
    polarization_axis = "x"        # or ex2_v2_per_m2 / ey2_v2_per_m2 / ez2_v2_per_m2
    single_photon_field_v_per_m = 1.0   # with photons and polarization_axis

    [medium]
    kind = "dielectric"            # or "perfect_conductor"
    refractive_index = 4.5         # or refractive_indices = [inf, 4.5, 2.0]

    [sweep]
    z_min_m = 0.5e-6
    z_max_m = 50e-6
    points = 400
    spacing = "log"

    [quadrature]
    rel_tol = 1e-10

When a preset and a file are combined, each section present in the file
replaces the preset's section as a whole.
"""

from __future__ import annotations

import math
import re
import sys
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import ConfigError
from .quadrature import QuadratureSettings
from .units import AtomModel, Dielectric, DriveField, Medium, PerfectConductor

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

PRESETS = ("cs-default", "fig4", "fig5")

_ALLOWED = {
    "atom": {"omega0_rad_per_s", "dipole_c_m", "dipole_axis", "dx2_c2m2", "dy2_c2m2", "dz2_c2m2"},
    "drive": {"omega_rad_per_s", "photons", "intensity_w_per_cm2", "intensity_w_per_m2",
              "polarization_axis", "single_photon_field_v_per_m",
              "ex2_v2_per_m2", "ey2_v2_per_m2", "ez2_v2_per_m2"},
    "medium": {"kind", "refractive_index", "refractive_indices"},
    "sweep": {"z_min_m", "z_max_m", "points", "spacing"},
    "quadrature": {"rel_tol", "abs_tol", "max_panels", "oscillations_per_panel"},
}
_AXES = ("x", "y", "z")
MAX_POINTS = 10 ** 6


@dataclass(frozen=True)
class SweepSpec:
    z_min: float
    z_max: float
    points: int
    spacing: str = "log"

    def __post_init__(self):
        if not (0.0 < self.z_min < self.z_max < math.inf):
            raise ValueError("need 0 < z_min < z_max < inf")
        if not (2 <= self.points <= MAX_POINTS):
            raise ValueError(f"points must be in [2, {MAX_POINTS}]")
        if self.spacing not in ("log", "linear"):
            raise ValueError("spacing must be 'log' or 'linear'")

    def grid(self) -> np.ndarray:
        if self.spacing == "log":
            return np.geomspace(self.z_min, self.z_max, self.points)
        return np.linspace(self.z_min, self.z_max, self.points)


@dataclass(frozen=True)
class RunConfig:
    atom: AtomModel
    drive: DriveField
    media: tuple[tuple[str, Medium], ...]
    sweep: SweepSpec
    quadrature: QuadratureSettings
    raw: dict = field(compare=False, repr=False)
    source: str = "<config>"


class _Source:
    """Configuration text with line lookup for diagnostics."""

    def __init__(self, text: str, name: str):
        self.text = text
        self.name = name

    def line_of(self, section: str, key: str | None = None) -> int | None:
        current = None
        for i, line in enumerate(self.text.splitlines(), start=1):
            m = re.match(r"\s*\[\s*([A-Za-z0-9_.-]+)\s*\]", line)
            if m:
                current = m.group(1)
                if key is None and current == section:
                    return i
                continue
            if key is not None and current == section and re.match(rf"\s*{re.escape(key)}\s*=", line):
                return i
        return None


def preset_text(name: str) -> str:
    if name not in PRESETS:
        raise ConfigError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")
    return resources.files("fockcp").joinpath("presets", f"{name}.toml").read_text()


def _parse(text: str, name: str) -> dict:
    try:
        return tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        m = re.search(r"line (\d+)", str(exc))
        raise ConfigError(f"{name}: {exc}", line=int(m.group(1)) if m else None) from None


def load_config(path: str | Path | None = None, preset: str | None = None) -> RunConfig:
    """Read a configuration file, a preset, or a preset overridden by a file."""
    if path is None and preset is None:
        raise ConfigError("give a configuration file or a preset")
    data: dict = {}
    owners: dict[str, _Source] = {}
    if preset is not None:
        src = _Source(preset_text(preset), f"preset {preset}")
        for section, body in _parse(src.text, src.name).items():
            data[section] = body
            owners[section] = src
    if path is not None:
        p = Path(path)
        try:
            text = p.read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read {p}: {exc.strerror}") from None
        src = _Source(text, str(p))
        for section, body in _parse(text, src.name).items():
            data[section] = body
            owners[section] = src
    return _build(data, owners, preset if path is None else str(path))


def parse_config_text(text: str, name: str = "<config>") -> RunConfig:
    src = _Source(text, name)
    data = _parse(text, name)
    return _build(data, {k: src for k in data}, name)


def _build(data: dict, owners: dict, name: str) -> RunConfig:
    fallback = _Source("", name)

    def err(section, key, message):
        src = owners.get(section, fallback)
        dotted = f"{section}.{key}" if key else section
        raise ConfigError(message, field=dotted, line=src.line_of(section, key))

    for section, body in data.items():
        if section not in _ALLOWED:
            err(section, None, f"unknown section [{section}]")
        if not isinstance(body, dict):
            err(section, None, "expected a table")
        for key in body:
            if key not in _ALLOWED[section]:
                err(section, key, f"unknown key {key!r}")
    for section in ("atom", "drive", "medium", "sweep"):
        if section not in data:
            err(section, None, f"missing section [{section}]")

    def number(section, key, *, required=True, default=None, positive=False, nonneg=False):
        body = data.get(section, {})
        if key not in body:
            if required:
                err(section, key, "missing required value")
            return default
        v = body[key]
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            err(section, key, f"expected a number, got {v!r}")
        v = float(v)
        if math.isnan(v):
            err(section, key, "must not be NaN")
        if positive and not (v > 0 and math.isfinite(v)):
            err(section, key, "must be a finite number > 0")
        if nonneg and not (v >= 0 and math.isfinite(v)):
            err(section, key, "must be a finite number >= 0")
        return v

    def axis(section, key, default="x"):
        v = data.get(section, {}).get(key, default)
        if v not in _AXES:
            err(section, key, f"axis must be one of x, y, z, got {v!r}")
        return v

    # atom
    atom_s = data["atom"]
    omega0 = number("atom", "omega0_rad_per_s", positive=True)
    comps = [k for k in ("dx2_c2m2", "dy2_c2m2", "dz2_c2m2") if k in atom_s]
    if "dipole_c_m" in atom_s and comps:
        err("atom", "dipole_c_m", "give either dipole_c_m or squared components, not both")
    if "dipole_c_m" in atom_s:
        d = number("atom", "dipole_c_m", nonneg=True)
        d2 = dict.fromkeys(_AXES, 0.0)
        d2[axis("atom", "dipole_axis")] = d * d
    elif comps:
        if "dipole_axis" in atom_s:
            err("atom", "dipole_axis", "dipole_axis only applies with dipole_c_m")
        d2 = {a: number("atom", f"d{a}2_c2m2", required=False, default=0.0, nonneg=True) for a in _AXES}
    else:
        err("atom", "dipole_c_m", "missing dipole moment (dipole_c_m or dx2_c2m2/dy2_c2m2/dz2_c2m2)")
    atom = AtomModel(omega0, d2["x"], d2["y"], d2["z"])

    # drive
    drive_s = data["drive"]
    omega_l = number("drive", "omega_rad_per_s", positive=True)
    given = [k for k in ("photons", "intensity_w_per_cm2", "intensity_w_per_m2") if k in drive_s]
    if len(given) != 1:
        err("drive", given[1] if len(given) > 1 else "photons",
            "give exactly one of photons, intensity_w_per_cm2, intensity_w_per_m2")
    photons = intensity = None
    if given[0] == "photons":
        v = drive_s["photons"]
        if isinstance(v, bool) or not isinstance(v, int) or v < 0:
            err("drive", "photons", f"photons must be a nonnegative integer, got {v!r}")
        photons = v
    elif given[0] == "intensity_w_per_cm2":
        intensity = number("drive", "intensity_w_per_cm2", nonneg=True) * 1e4
    else:
        intensity = number("drive", "intensity_w_per_m2", nonneg=True)
    e_comps = [k for k in ("ex2_v2_per_m2", "ey2_v2_per_m2", "ez2_v2_per_m2") if k in drive_s]
    if e_comps and ("polarization_axis" in drive_s or "single_photon_field_v_per_m" in drive_s):
        err("drive", e_comps[0], "give either polarization_axis or squared field components, not both")
    if e_comps:
        e2 = {a: number("drive", f"e{a}2_v2_per_m2", required=False, default=0.0, nonneg=True) for a in _AXES}
    else:
        amp = number("drive", "single_photon_field_v_per_m", required=photons is not None,
                     default=1.0, nonneg=True)
        e2 = dict.fromkeys(_AXES, 0.0)
        e2[axis("drive", "polarization_axis")] = amp * amp
    try:
        drive = DriveField(omega_l, e2["x"], e2["y"], e2["z"], photons=photons,
                           classical_intensity=intensity)
    except ValueError as exc:
        err("drive", e_comps[0] if e_comps else "polarization_axis", str(exc))

    # medium
    med = data["medium"]
    kind = med.get("kind", "dielectric")
    if kind not in ("dielectric", "perfect_conductor"):
        err("medium", "kind", f"kind must be 'dielectric' or 'perfect_conductor', got {kind!r}")
    media: list[tuple[str, Medium]] = []
    if kind == "perfect_conductor":
        if "refractive_index" in med or "refractive_indices" in med:
            err("medium", "kind", "a perfect conductor takes no refractive index")
        media.append(("pc", PerfectConductor()))
    else:
        if ("refractive_index" in med) == ("refractive_indices" in med):
            err("medium", "refractive_index", "give exactly one of refractive_index, refractive_indices")
        key = "refractive_index" if "refractive_index" in med else "refractive_indices"
        values = med[key] if key == "refractive_indices" else [med[key]]
        if not isinstance(values, list) or not values:
            err("medium", key, "expected a non-empty list of numbers")
        for v in values:
            if isinstance(v, bool) or not isinstance(v, (int, float)) or math.isnan(v):
                err("medium", key, f"expected a number, got {v!r}")
            if v < 1:
                err("medium", key, f"refractive index must be >= 1, got {v!r}")
            if math.isinf(v):
                media.append(("pc", PerfectConductor()))
            else:
                media.append((f"n{float(v):g}", Dielectric(float(v))))
        labels = [lab for lab, _ in media]
        if len(set(labels)) != len(labels):
            err("medium", key, "duplicate refractive index")

    # sweep
    sw = data["sweep"]
    z_min = number("sweep", "z_min_m", positive=True)
    z_max = number("sweep", "z_max_m", positive=True)
    if not z_min < z_max:
        err("sweep", "z_max_m", "z_max_m must exceed z_min_m")
    pts = sw.get("points")
    if isinstance(pts, bool) or not isinstance(pts, int) or not (2 <= pts <= MAX_POINTS):
        err("sweep", "points", f"points must be an integer in [2, {MAX_POINTS}], got {pts!r}")
    spacing = sw.get("spacing", "log")
    if spacing not in ("log", "linear"):
        err("sweep", "spacing", f"spacing must be 'log' or 'linear', got {spacing!r}")
    sweep = SweepSpec(z_min, z_max, pts, spacing)

    # quadrature
    q = data.get("quadrature", {})
    defaults = QuadratureSettings()
    max_panels = q.get("max_panels", defaults.max_panels)
    if isinstance(max_panels, bool) or not isinstance(max_panels, int) or max_panels < 1:
        err("quadrature", "max_panels", "max_panels must be a positive integer")
    quad = QuadratureSettings(
        rel_tol=number("quadrature", "rel_tol", required=False, default=defaults.rel_tol, positive=True),
        abs_tol=number("quadrature", "abs_tol", required=False, default=defaults.abs_tol, nonneg=True),
        max_panels=max_panels,
        oscillations_per_panel=number("quadrature", "oscillations_per_panel", required=False,
                                      default=defaults.oscillations_per_panel, positive=True),
    )
    return RunConfig(atom, drive, tuple(media), sweep, quad, raw=data, source=name)
