"""Physical constants, scenario data model and unit conversion.

Internally everything is expressed in natural units with hbar = c = eps0 = 1
and lengths kept in metres.  In that system

===================  ==========================  =========
quantity             SI -> natural               unit
===================  ==========================  =========
angular frequency    omega / c                   1/m
squared dipole       d**2 / (eps0 hbar c)        m**2
polarizability       alpha / eps0                m**3
intensity            I / (hbar c**2)             1/m**4
drive amplitude      4 pi eps0 G**2 / (hbar wL)  1/m**3
energy               E / (hbar c)                1/m
===================  ==========================  =========

The drive amplitude ``G`` is the single-photon field of the drive mode in V/m,
so that the cycle-averaged intensity of a Fock state is
``I = c eps0 |G|**2 (N + 1/2)``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Literal, Union

from .errors import ResonantDrive

# CODATA 2018
PLANCK = 6.626_070_15e-34  # exact
HBAR = PLANCK / (2.0 * math.pi)
C = 299_792_458.0  # exact
EPSILON0 = 8.854_187_8128e-12

#: relative detuning below which a near-resonance warning is issued
RESONANCE_GUARD = 1e-6


@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float = HBAR
    c: float = C
    epsilon0: float = EPSILON0


CONSTANTS = PhysicalConstants()


def _check_nonneg(name: str, value: float) -> None:
    if not (value >= 0.0 and math.isfinite(value)):
        raise ValueError(f"{name} must be a finite number >= 0, got {value!r}")


def _check_pos(name: str, value: float) -> None:
    if not (value > 0.0 and math.isfinite(value)):
        raise ValueError(f"{name} must be a finite number > 0, got {value!r}")


@dataclass(frozen=True)
class AtomModel:
    """Two-level atom with a diagonal ("hydrogen-like") dipole.

    Parameters
    ----------
    omega0 : float
        Transition angular frequency in rad/s.
    dx2, dy2, dz2 : float
        Squared Cartesian dipole components in C^2 m^2.
    """

    omega0: float
    dx2: float = 0.0
    dy2: float = 0.0
    dz2: float = 0.0

    def __post_init__(self):
        _check_pos("omega0", self.omega0)
        for name in ("dx2", "dy2", "dz2"):
            _check_nonneg(name, getattr(self, name))

    @property
    def d_par2(self) -> float:
        return self.dx2 + self.dy2

    @property
    def d2(self) -> float:
        return self.dx2 + self.dy2 + self.dz2


@dataclass(frozen=True)
class DriveField:
    """Monochromatic drive in a Fock state or described by a classical intensity.

    Exactly one of ``photons`` and ``classical_intensity`` must be given.
    With ``photons`` the amplitude components are the squared single-photon
    field components in V^2/m^2.  With ``classical_intensity`` (W/m^2) only
    their ratios matter: they fix the polarization direction.
    """

    omega_l: float
    ex2: float = 0.0
    ey2: float = 0.0
    ez2: float = 0.0
    photons: int | None = None
    classical_intensity: float | None = None

    def __post_init__(self):
        _check_pos("omega_l", self.omega_l)
        for name in ("ex2", "ey2", "ez2"):
            _check_nonneg(name, getattr(self, name))
        if (self.photons is None) == (self.classical_intensity is None):
            raise ValueError("exactly one of photons and classical_intensity must be set")
        if self.photons is not None:
            if int(self.photons) != self.photons or self.photons < 0:
                raise ValueError(f"photons must be a nonnegative integer, got {self.photons!r}")
        else:
            _check_nonneg("classical_intensity", self.classical_intensity)
            if self.e2 == 0.0:
                raise ValueError("a classical drive needs a nonzero amplitude direction")

    @property
    def e2(self) -> float:
        return self.ex2 + self.ey2 + self.ez2


@dataclass(frozen=True)
class PerfectConductor:
    """Perfect reflector, the n -> infinity limit."""

    def __str__(self):
        return "perfect conductor"


@dataclass(frozen=True)
class Dielectric:
    """Non-dispersive dielectric half-space with real refractive index ``n >= 1``."""

    n: float

    def __post_init__(self):
        if not (self.n >= 1.0) or math.isnan(self.n):
            raise ValueError(f"refractive index must be >= 1, got {self.n!r}")
        if math.isinf(self.n):
            raise ValueError("use PerfectConductor() for n = inf")

    def __str__(self):
        return f"dielectric n={self.n:g}"


Medium = Union[PerfectConductor, Dielectric]


@dataclass(frozen=True)
class Scenario:
    atom: AtomModel
    drive: DriveField
    medium: Medium
    z: float

    def __post_init__(self):
        _check_pos("z", self.z)


# ---------------------------------------------------------------------------
# dimensionless groupings and atomic response


def zeta(omega_l: float, z: float) -> float:
    """Dimensionless distance 2 omega_L z / c (photon round trip over field period, times 2 pi)."""
    return 2.0 * omega_l * z / C


def check_detuning(omega0: float, omega_l: float) -> None:
    """Raise :class:`ResonantDrive` at exact resonance, warn inside the guard band."""
    if omega0 == omega_l:
        raise ResonantDrive(f"drive is resonant with the transition (omega = {omega0!r} rad/s)")
    if abs(omega0 - omega_l) / omega0 < RESONANCE_GUARD:
        warnings.warn(
            f"relative detuning {abs(omega0 - omega_l) / omega0:.3g} is inside the "
            f"resonance guard band ({RESONANCE_GUARD:g}); perturbation theory is unreliable",
            RuntimeWarning, stacklevel=3)


def polarizability(atom: AtomModel, omega_l: float) -> float:
    """Two-level dynamic polarizability in C^2 m^2 / J.

    ``alpha = 2 omega |d|^2 / (hbar (omega^2 - omega_L^2))`` with ``|d|^2`` the
    total squared dipole moment.  Positive for red detuning.
    """
    if omega_l < 0:
        raise ValueError("omega_l must be >= 0")
    check_detuning(atom.omega0, omega_l)
    w = atom.omega0
    return 2.0 * w * atom.d2 / (HBAR * (w * w - omega_l * omega_l))


def intensity(drive: DriveField, mode: Literal["exact", "classical"] = "exact") -> float:
    """Cycle-averaged drive intensity in W/m^2.

    ``exact`` is the Fock-state value E0^2 omega_L (2 N + 1) / (8 pi), which
    includes the vacuum contribution; ``classical`` is E0^2 N omega_L / (4 pi).
    Both are formed in natural units and converted to SI.
    """
    if mode not in ("exact", "classical"):
        raise ValueError(f"unknown intensity mode {mode!r}")
    if drive.photons is None:
        if mode == "exact":
            raise ValueError("the exact Fock-state intensity needs a photon number")
        return float(drive.classical_intensity)
    wl = drive.omega_l / C
    e2 = amplitude_to_natural(drive.e2, drive.omega_l)
    n = drive.photons
    if mode == "exact":
        i_nat = e2 * wl * (2 * n + 1) / (8.0 * math.pi)
    else:
        i_nat = e2 * n * wl / (4.0 * math.pi)
    return i_nat * HBAR * C * C


def classical_intensity(drive: DriveField) -> float:
    """Classical intensity I_cl in W/m^2, from either drive representation."""
    return intensity(drive, "classical")


# ---------------------------------------------------------------------------
# unit conversion


def amplitude_to_natural(g2: float, omega_l: float) -> float:
    return 4.0 * math.pi * EPSILON0 * g2 / (HBAR * omega_l)


def amplitude_to_si(e2: float, omega_l: float) -> float:
    return e2 * HBAR * omega_l / (4.0 * math.pi * EPSILON0)


_DIPOLE = EPSILON0 * HBAR * C
_INTENSITY = HBAR * C * C
_ENERGY = HBAR * C


@dataclass(frozen=True)
class NaturalScenario:
    """A :class:`Scenario` in natural units (hbar = c = eps0 = 1, lengths in m)."""

    omega0: float
    omega_l: float
    dx2: float
    dy2: float
    dz2: float
    ex2: float
    ey2: float
    ez2: float
    photons: int | None
    intensity: float | None
    z: float
    medium: Medium

    def photon_weighted_field(self) -> tuple[float, float, float]:
        """N_L E_i^2 for i = x, y, z; the only drive combination the shift depends on."""
        if self.photons is not None:
            n = self.photons
            return n * self.ex2, n * self.ey2, n * self.ez2
        total = self.ex2 + self.ey2 + self.ez2
        # I_cl = N |E0|^2 omega_L / (4 pi)
        scale = 4.0 * math.pi * self.intensity / (self.omega_l * total)
        return scale * self.ex2, scale * self.ey2, scale * self.ez2


def to_natural(scenario: Scenario) -> NaturalScenario:
    a, d = scenario.atom, scenario.drive
    return NaturalScenario(
        omega0=a.omega0 / C,
        omega_l=d.omega_l / C,
        dx2=a.dx2 / _DIPOLE,
        dy2=a.dy2 / _DIPOLE,
        dz2=a.dz2 / _DIPOLE,
        ex2=amplitude_to_natural(d.ex2, d.omega_l),
        ey2=amplitude_to_natural(d.ey2, d.omega_l),
        ez2=amplitude_to_natural(d.ez2, d.omega_l),
        photons=d.photons,
        intensity=None if d.classical_intensity is None else d.classical_intensity / _INTENSITY,
        z=scenario.z,
        medium=scenario.medium,
    )


def from_natural(nat: NaturalScenario) -> Scenario:
    """Inverse of :func:`to_natural`."""
    omega_l = nat.omega_l * C
    atom = AtomModel(nat.omega0 * C, nat.dx2 * _DIPOLE, nat.dy2 * _DIPOLE, nat.dz2 * _DIPOLE)
    drive = DriveField(
        omega_l,
        amplitude_to_si(nat.ex2, omega_l),
        amplitude_to_si(nat.ey2, omega_l),
        amplitude_to_si(nat.ez2, omega_l),
        photons=nat.photons,
        classical_intensity=None if nat.intensity is None else nat.intensity * _INTENSITY,
    )
    return Scenario(atom, drive, nat.medium, nat.z)


def to_si(shift_natural: float) -> float:
    """Convert an energy from natural units (1/m) to joules."""
    return shift_natural * _ENERGY


def energy_to_natural(energy: float) -> float:
    return energy / _ENERGY
