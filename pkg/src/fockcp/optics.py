"""Wave vectors, Fresnel coefficients, polarization bases and vacuum-side modes
for a planar interface at z = 0 with vacuum in z > 0.

All functions broadcast over numpy arrays where that makes sense, so the
quadrature kernels can evaluate many nodes at once.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateDenominator
from .units import Dielectric, Medium, PerfectConductor


class Polarization(str, enum.Enum):
    TE = "TE"
    TM = "TM"


class Branch(str, enum.Enum):
    TRAVELING = "traveling"
    EVANESCENT = "evanescent"


def _sqrt_upper(x):
    """Square root on the branch Im >= 0 (Re >= 0 when the result is real)."""
    r = np.sqrt(np.asarray(x, dtype=complex))
    return np.where(r.imag < 0, -r, r)


@dataclass(frozen=True)
class WaveVector:
    kx: float
    ky: float
    kz: complex

    @property
    def kpar(self) -> float:
        return math.hypot(self.kx, self.ky)

    @property
    def omega(self) -> complex:
        """|k| on the physical branch (c = 1)."""
        return complex(_sqrt_upper(self.kz * self.kz + self.kpar ** 2))

    @property
    def bar(self) -> "WaveVector":
        """Mirror image under kz -> -kz."""
        return WaveVector(self.kx, self.ky, -self.kz)

    def as_array(self) -> np.ndarray:
        return np.array([self.kx, self.ky, self.kz], dtype=complex)


@dataclass(frozen=True)
class PoleClass:
    branch: Branch
    kz_pole: tuple[complex, ...]


# ---------------------------------------------------------------------------
# Fresnel coefficients


def kz_in_medium(kz, kpar, n: float):
    """Perpendicular wave number inside the medium, sqrt(n^2 kz^2 + kpar^2 (n^2 - 1)).

    The root is taken with Im >= 0, and positive for a positive real argument.
    """
    if n == 1.0:
        return np.asarray(kz, dtype=complex)
    kz = np.asarray(kz, dtype=complex)
    kpar = np.asarray(kpar, dtype=float)
    n2 = n * n
    return _sqrt_upper(n2 * kz * kz + kpar * kpar * (n2 - 1.0))


def _ratio(a, b):
    num = a - b
    den = a + b
    scale = np.abs(a) + np.abs(b)
    if np.any(np.abs(den) <= 4.0 * np.finfo(float).eps * scale) or np.any(scale == 0.0):
        raise DegenerateDenominator("Fresnel denominator vanishes (grazing or branch-point input)")
    return num / den


def reflection(pol: Polarization | str, kz, kpar, medium: Medium):
    """Fresnel reflection coefficient for light incident from the vacuum side.

    Parameters
    ----------
    pol : {"TE", "TM"}
    kz : complex or array
        Perpendicular wave number in vacuum, Im(kz) >= 0.
    kpar : float or array
        Magnitude of the parallel wave vector.
    medium : PerfectConductor or Dielectric

    Returns
    -------
    complex or ndarray
        ``(kz - kzd)/(kz + kzd)`` for TE and ``(n^2 kz - kzd)/(n^2 kz + kzd)``
        for TM.  A perfect conductor gives exactly -1 (TE) and +1 (TM).
    """
    pol = Polarization(pol)
    shape = np.broadcast(np.asarray(kz), np.asarray(kpar)).shape
    if isinstance(medium, PerfectConductor):
        value = -1.0 if pol is Polarization.TE else 1.0
        out = np.full(shape, value, dtype=complex)
        return out if shape else complex(out)
    if not isinstance(medium, Dielectric):
        raise TypeError(f"unsupported medium {medium!r}")
    n = medium.n
    if n == 1.0:
        out = np.zeros(shape, dtype=complex)
        return out if shape else complex(out)
    kz = np.asarray(kz, dtype=complex)
    kzd = kz_in_medium(kz, kpar, n)
    if pol is Polarization.TE:
        out = _ratio(kz, kzd)
    else:
        out = _ratio(n * n * kz, kzd)
    return out if shape else complex(out)


# ---------------------------------------------------------------------------
# polarization vectors


def polarization_vectors(k: WaveVector) -> tuple[np.ndarray, np.ndarray]:
    """TE and TM unit vectors (bilinear norm) for wave vector ``k``.

    At kpar = 0 the azimuth limit phi = 0 is used, i.e. the limit kx -> 0+
    along ky = 0, giving e_TE = (0, -1, 0) and e_TM = (kz, 0, 0)/|k|.
    """
    kpar = k.kpar
    omega = k.omega
    kz = complex(k.kz)
    if kpar == 0.0:
        e_te = np.array([0.0, -1.0, 0.0], dtype=complex)
        e_tm = np.array([kz / omega, 0.0, 0.0], dtype=complex)
        return e_te, e_tm
    e_te = np.array([k.ky, -k.kx, 0.0], dtype=complex) / kpar
    e_tm = np.array([k.kx * kz, k.ky * kz, -kpar * kpar], dtype=complex) / (omega * kpar)
    return e_te, e_tm


def polarization_vector(k: WaveVector, pol: Polarization | str) -> np.ndarray:
    e_te, e_tm = polarization_vectors(k)
    return e_te if Polarization(pol) is Polarization.TE else e_tm


def polarization_outer(k: WaveVector, pol: Polarization | str) -> np.ndarray:
    """Dyadic product of the polarization vector with its mirror image, e (x) e_bar."""
    return np.outer(polarization_vector(k, pol), polarization_vector(k.bar, pol))


# ---------------------------------------------------------------------------
# vacuum-side mode functions


def mode_ir(r, k: WaveVector, pol: Polarization | str, medium: Medium) -> np.ndarray:
    """Incident-plus-reflected mode function on the vacuum side (z > 0).

    ``-i sqrt(omega / (2 (2 pi)^3)) [exp(i k.r) e + R exp(i kbar.r) ebar]``
    """
    r = np.asarray(r, dtype=float)
    if r.shape != (3,):
        raise ValueError("r must be a 3-vector")
    if r[2] < 0:
        raise ValueError("mode_ir is defined on the vacuum side z >= 0")
    kbar = k.bar
    e = polarization_vector(k, pol)
    ebar = polarization_vector(kbar, pol)
    refl = reflection(pol, k.kz, k.kpar, medium)
    norm = -1j * np.sqrt(k.omega / (2.0 * (2.0 * np.pi) ** 3))
    return norm * (np.exp(1j * (k.as_array() @ r)) * e
                   + refl * np.exp(1j * (kbar.as_array() @ r)) * ebar)


# ---------------------------------------------------------------------------
# pole classification


def classify_pole(kpar: float, omega_l: float) -> PoleClass:
    """Locate the resonant pole omega = omega_L in the kz plane.

    kpar <= omega_L gives the two real poles +-sqrt(omega_L^2 - kpar^2); the
    grazing case kpar = omega_L counts as traveling with a double pole at 0.
    Otherwise the single pole i sqrt(kpar^2 - omega_L^2) lies on the positive
    imaginary axis.
    """
    if kpar < 0 or omega_l <= 0:
        raise ValueError("need kpar >= 0 and omega_l > 0")
    if kpar <= omega_l:
        root = math.sqrt(omega_l * omega_l - kpar * kpar)
        return PoleClass(Branch.TRAVELING, (complex(root), complex(-root)))
    return PoleClass(Branch.EVANESCENT, (1j * math.sqrt(kpar * kpar - omega_l * omega_l),))
