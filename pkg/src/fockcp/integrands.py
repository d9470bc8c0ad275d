"""Resonant-pole integrands of the driven surface shift.

Each function returns S(chi), with chi = tau in [0, 1] on the traveling branch
and chi = i kappa, kappa >= 0, on the evanescent branch.  The shift is then

    traveling  = Re  int_0^1   S(tau) dtau
    evanescent =     int_0^oo  i S(i kappa) dkappa

Reflection coefficients are taken on shell, at omega = omega_L with
kz = omega_L chi and kpar = omega_L sqrt(1 - chi^2).

All quantities are in natural units (see :mod:`fockcp.units`).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ResonantDrive
from .optics import reflection
from .units import Medium, NaturalScenario, Scenario, to_natural


@dataclass(frozen=True)
class IntegrandParams:
    """Natural-unit inputs of the integrands.

    ``photons`` multiplies every integrand.  For a classically specified
    drive use ``photons = 1`` and put N_L E_i^2 into ``ex2, ey2, ez2``.
    """

    photons: float
    omega: float
    omega_l: float
    ex2: float
    ey2: float
    ez2: float
    dx2: float
    dy2: float
    dz2: float
    z: float

    def __post_init__(self):
        if self.omega == self.omega_l:
            raise ResonantDrive("omega == omega_L: the resonant integrands diverge")

    @classmethod
    def from_natural(cls, nat: NaturalScenario) -> "IntegrandParams":
        if nat.photons is not None:
            photons, ex2, ey2, ez2 = float(nat.photons), nat.ex2, nat.ey2, nat.ez2
        else:
            photons = 1.0
            ex2, ey2, ez2 = nat.photon_weighted_field()
        return cls(photons, nat.omega0, nat.omega_l, ex2, ey2, ez2,
                   nat.dx2, nat.dy2, nat.dz2, nat.z)

    @classmethod
    def from_scenario(cls, scenario: Scenario) -> "IntegrandParams":
        return cls.from_natural(to_natural(scenario))

    @property
    def d_par2(self) -> float:
        return self.dx2 + self.dy2

    @property
    def field_dipole(self) -> float:
        """E_x^2 |d_x|^2 + E_y^2 |d_y|^2 + E_z^2 |d_z|^2."""
        return self.ex2 * self.dx2 + self.ey2 * self.dy2 + self.ez2 * self.dz2


def _common(chi, p: IntegrandParams, medium: Medium):
    chi = np.asarray(chi, dtype=complex)
    kz = p.omega_l * chi
    kpar = p.omega_l * np.sqrt(np.abs((1.0 - chi * chi).real))
    r_te = reflection("TE", kz, kpar, medium)
    r_tm = reflection("TM", kz, kpar, medium)
    chi2 = chi * chi
    te_like = r_te - chi2 * r_tm
    tm_like = (1.0 - chi2) * r_tm
    prefactor = -1j * p.photons * p.omega_l ** 4 / (32.0 * np.pi ** 2) * np.exp(2j * p.omega_l * chi * p.z)
    return prefactor, te_like, tm_like


def _bracket_single(p: IntegrandParams, te_like, tm_like):
    # diagrams 1 and 4
    return p.field_dipole * (p.d_par2 * te_like + 2.0 * p.dz2 * tm_like)


def _bracket_double(p: IntegrandParams, te_like, tm_like):
    # diagrams 2 and 3
    return ((p.ex2 * p.dx2 ** 2 + p.ey2 * p.dy2 ** 2) * te_like
            + 2.0 * p.ez2 * p.dz2 ** 2 * tm_like)


def s_i(index: int, chi, params: IntegrandParams, medium: Medium):
    """Integrand of diagram ``index`` (1 to 4)."""
    w, wl = params.omega, params.omega_l
    if w == wl:
        raise ResonantDrive("omega == omega_L")
    prefactor, te_like, tm_like = _common(chi, params, medium)
    if index == 1:
        return prefactor * _bracket_single(params, te_like, tm_like) / (w + wl) ** 2
    if index in (2, 3):
        return prefactor * _bracket_double(params, te_like, tm_like) / ((w + wl) * (w - wl))
    if index == 4:
        return prefactor * _bracket_single(params, te_like, tm_like) / (w - wl) ** 2
    raise ValueError(f"diagram index must be 1..4, got {index!r}")


def s_tot(chi, params: IntegrandParams, medium: Medium):
    """Closed form of S_1 + S_2 + S_3 + S_4.

    Written out independently of :func:`s_i`; the two agree through the
    partial-fraction identity
    1/(w+wL)^2 + 1/(w-wL)^2 + 2/(w^2-wL^2) = 4 w^2/(w^2-wL^2)^2.
    """
    p = params
    w, wl = p.omega, p.omega_l
    if w == wl:
        raise ResonantDrive("omega == omega_L")
    prefactor, te_like, tm_like = _common(chi, p, medium)
    quartic = ((p.ex2 * p.dx2 ** 2 + p.ey2 * p.dy2 ** 2) * te_like
               + 2.0 * p.ez2 * p.dz2 ** 2 * tm_like)
    cross = ((p.ez2 * p.dz2 * p.d_par2 + (p.ex2 + p.ey2) * p.dx2 * p.dy2) * te_like
             + 2.0 * (p.ex2 * p.dx2 + p.ey2 * p.dy2) * p.dz2 * tm_like)
    det2 = (w * w - wl * wl) ** 2
    return prefactor / det2 * (4.0 * w * w * quartic + 2.0 * (w * w + wl * wl) * cross)


def is_parallel(params: IntegrandParams) -> bool:
    """True when drive and dipole both point along x."""
    return (params.ey2 == 0.0 and params.ez2 == 0.0
            and params.dy2 == 0.0 and params.dz2 == 0.0)


def s_parallel(chi, params: IntegrandParams, medium: Medium):
    """Integrand for drive and dipole both along x (parallel to the surface)."""
    if not is_parallel(params):
        raise ValueError("s_parallel needs ey2 = ez2 = dy2 = dz2 = 0")
    p = params
    w, wl = p.omega, p.omega_l
    if w == wl:
        raise ResonantDrive("omega == omega_L")
    chi = np.asarray(chi, dtype=complex)
    kz = wl * chi
    kpar = wl * np.sqrt(np.abs((1.0 - chi * chi).real))
    r_te = reflection("TE", kz, kpar, medium)
    r_tm = reflection("TM", kz, kpar, medium)
    return (-1j * p.photons * wl ** 4 / (8.0 * np.pi ** 2) * w * w / (w * w - wl * wl) ** 2
            * p.ex2 * p.dx2 ** 2 * np.exp(2j * wl * chi * p.z) * (r_te - chi * chi * r_tm))
