"""Adaptive Gauss-Kronrod kernels for the two resonant-pole integrals.

``integrate_traveling`` handles the oscillatory integral over tau in [0, 1];
the interval is pre-split so that no panel spans more than
``oscillations_per_panel`` periods pi/zeta.  ``integrate_evanescent`` handles
the exponentially damped integral over kappa in [0, inf), truncated at
max(20, 40/zeta).

Both use a 21-point Kronrod rule with its embedded 10-point Gauss rule on every
panel and bisect the panel with the largest error estimate until the summed
estimate meets the target.  Integrands must accept numpy arrays.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import NonDecayingIntegrand, NonFiniteIntegrand, ToleranceNotMet

# 21-point Gauss-Kronrod abscissae and weights on [-1, 1] (QUADPACK qk21).
_XGK = np.array([
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077600015860364,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
])
_WG = np.array([
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
])

NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
GAUSS_WEIGHTS = np.zeros(21)
GAUSS_WEIGHTS[1:10:2] = _WG  # -xgk[1], -xgk[3], ..., -xgk[9]
GAUSS_WEIGHTS[11:20:2] = _WG[::-1]

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class QuadratureSettings:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-30
    max_panels: int = 20000
    oscillations_per_panel: float = 1.0

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be > 0")
        if not self.abs_tol >= 0:
            raise ValueError("abs_tol must be >= 0")
        if self.max_panels < 1:
            raise ValueError("max_panels must be >= 1")
        if not self.oscillations_per_panel > 0:
            raise ValueError("oscillations_per_panel must be > 0")


@dataclass(frozen=True)
class QuadratureResult:
    """Real part of the integral, its error estimate, and the imaginary residue.

    ``imag`` is the imaginary part of the complex integral that was discarded
    when taking the physical (real) value.
    """

    value: float
    error_estimate: float
    panels_used: int
    imag: float = 0.0


def _gk(f: Callable, a: np.ndarray, b: np.ndarray):
    """Kronrod sums, error estimates and |f| integrals on panels [a_j, b_j]."""
    half = 0.5 * (b - a)
    mid = 0.5 * (b + a)
    x = mid[:, None] + half[:, None] * NODES[None, :]
    y = np.asarray(f(x), dtype=complex)
    if y.shape != x.shape:
        y = np.broadcast_to(y, x.shape)
    if not np.all(np.isfinite(y)):
        raise NonFiniteIntegrand("integrand returned a non-finite value")
    kron = half * (y @ KRONROD_WEIGHTS)
    gauss = half * (y @ GAUSS_WEIGHTS)
    absint = np.abs(half) * (np.abs(y) @ KRONROD_WEIGHTS)
    err = np.maximum(np.abs(kron - gauss), 50.0 * _EPS * absint)
    return kron, err, absint


def _adaptive(f: Callable, breakpoints: Sequence[float], settings: QuadratureSettings):
    pts = np.asarray(breakpoints, dtype=float)
    a, b = pts[:-1], pts[1:]
    if len(a) > settings.max_panels:
        raise ToleranceNotMet(
            f"{len(a)} initial panels exceed max_panels={settings.max_panels}",
            panels_used=len(a))
    kron, err, _ = _gk(f, a, b)
    # heap of (-err, tiebreak, a, b, value)
    heap = [(-e, i, lo, hi, v) for i, (lo, hi, v, e) in enumerate(zip(a, b, kron, err))]
    heapq.heapify(heap)
    total = complex(kron.sum())
    total_err = float(err.sum())
    counter = len(heap)

    def target(value):
        return max(settings.rel_tol * abs(value), settings.abs_tol)

    while total_err > target(total):
        if len(heap) + 1 > settings.max_panels:
            raise ToleranceNotMet(
                f"error estimate {total_err:.3g} above target {target(total):.3g} "
                f"with {len(heap)} panels", value=total.real, error_estimate=total_err,
                panels_used=len(heap))
        # bisect the worst panels together, in batches to keep numpy busy
        batch = []
        budget = min(max(1, len(heap) // 4), settings.max_panels - len(heap))
        while heap and len(batch) < budget:
            item = heapq.heappop(heap)
            batch.append(item)
            if -item[0] < 0.1 * (-batch[0][0]):
                break
        lo = np.array([it[2] for it in batch])
        hi = np.array([it[3] for it in batch])
        mid = 0.5 * (lo + hi)
        if np.any((mid <= lo) | (mid >= hi)):
            raise ToleranceNotMet("panel width reached floating-point resolution",
                                  value=total.real, error_estimate=total_err,
                                  panels_used=len(heap) + len(batch))
        k, e, _ = _gk(f, np.concatenate([lo, mid]), np.concatenate([mid, hi]))
        m = len(batch)
        for j, it in enumerate(batch):
            total -= it[4]
            total_err -= -it[0]
            for s in (j, j + m):
                l_, h_ = (lo[j], mid[j]) if s == j else (mid[j], hi[j])
                heapq.heappush(heap, (-float(e[s]), counter, l_, h_, complex(k[s])))
                counter += 1
                total += k[s]
                total_err += float(e[s])
        # re-sum to avoid drift from repeated add/subtract
        total = complex(sum(it[4] for it in heap))
        total_err = float(sum(-it[0] for it in heap))
    return total, total_err, len(heap)


def integrate_traveling(f: Callable, zeta: float,
                        settings: QuadratureSettings | None = None) -> QuadratureResult:
    """Re of the integral of ``f(tau)`` over tau in [0, 1].

    ``zeta`` sets the oscillation scale: panels are at most
    ``oscillations_per_panel * pi / zeta`` wide before adaptive refinement.
    """
    settings = settings or QuadratureSettings()
    if zeta < 0:
        raise ValueError("zeta must be >= 0")
    width = settings.oscillations_per_panel * math.pi / zeta if zeta > 0 else 1.0
    panels = max(1, math.ceil(1.0 / width))
    pts = np.linspace(0.0, 1.0, panels + 1)
    total, err, used = _adaptive(lambda t: f(t), pts, settings)
    return QuadratureResult(total.real, err, used, total.imag)


def kappa_cutoff(zeta: float) -> float:
    return max(20.0, 40.0 / zeta)


def integrate_evanescent(f: Callable, zeta: float,
                         settings: QuadratureSettings | None = None,
                         breakpoints: Sequence[float] = (),
                         kappa_max: float | None = None) -> QuadratureResult:
    """Integral of ``i f(i kappa)`` over kappa in [0, inf).

    ``f`` is called with the purely imaginary argument ``1j * kappa``.  The
    domain is cut at ``kappa_max`` (default max(20, 40/zeta)); known
    non-smooth points of ``f`` may be passed as ``breakpoints``.  The real part
    is returned as ``value`` and the imaginary part as ``imag``.
    """
    settings = settings or QuadratureSettings()
    if not zeta > 0:
        raise ValueError("zeta must be > 0")
    kmax = kappa_cutoff(zeta) if kappa_max is None else float(kappa_max)

    def g(kappa):
        return 1j * np.asarray(f(1j * np.asarray(kappa, dtype=float)), dtype=complex)

    pts = {0.0, kmax}
    pts.update(p for p in breakpoints if 0.0 < p < kmax)
    scale = 1.0 / zeta
    while scale < kmax:
        pts.add(scale)
        scale *= 4.0
    pts = sorted(pts)

    # decay check: the tail must be negligible against the bulk of the integrand
    probe = np.linspace(0.0, kmax, 257)
    values = np.abs(np.asarray(g(probe), dtype=complex))
    if not np.all(np.isfinite(values)):
        raise NonFiniteIntegrand("integrand returned a non-finite value")
    peak = values.max()
    if peak > 0 and values[-1] > 1e-12 * peak:
        raise NonDecayingIntegrand(
            f"|integrand| at kappa_max={kmax:g} is {values[-1] / peak:.3g} of its peak")

    total, err, used = _adaptive(g, pts, settings)
    return QuadratureResult(total.real, err, used, total.imag)
