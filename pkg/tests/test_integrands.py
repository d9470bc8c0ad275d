import dataclasses
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fockcp import Dielectric, PerfectConductor, ResonantDrive
from fockcp.integrands import IntegrandParams, is_parallel, s_i, s_parallel, s_tot
from fockcp.optics import reflection

unit = st.floats(0.0, 2.0)
ratio = st.floats(0.1, 3.0).filter(lambda r: abs(r - 1) > 1e-3)
media = st.one_of(st.just(PerfectConductor()), st.floats(1.0, 8.0).map(Dielectric))
traveling = st.floats(0.0, 1.0).map(complex)
evanescent = st.floats(0.0, 20.0).map(lambda k: 1j * k)
chis = st.one_of(traveling, evanescent)


@st.composite
def params(draw, parallel=False):
    wl = draw(st.floats(0.5, 2.0))
    w = draw(ratio) * wl
    fields = [draw(unit), 0.0, 0.0] if parallel else [draw(unit) for _ in range(3)]
    dips = [draw(unit), 0.0, 0.0] if parallel else [draw(unit) for _ in range(3)]
    return IntegrandParams(draw(st.integers(0, 1000)), w, wl, *fields, *dips, draw(st.floats(0.0, 3.0)))


def _safe(chi, medium):
    # skip the exact grazing point where the Fresnel denominator is singular
    return not (isinstance(medium, Dielectric) and medium.n > 1 and chi == 0)


def example():
    return IntegrandParams(3, 1.3, 1.0, 0.4, 0.7, 0.2, 0.5, 0.9, 0.3, 0.8)


class TestDiagrams:
    def test_zero_field(self):
        p = dataclasses.replace(example(), ex2=0.0, ey2=0.0, ez2=0.0)
        for i in range(1, 5):
            for chi in (0.3, 0.8j, 1.0):
                assert s_i(i, chi, p, Dielectric(2.0)) == 0

    def test_zero_photons(self):
        p = dataclasses.replace(example(), photons=0)
        for i in range(1, 5):
            assert s_i(i, 0.4, p, PerfectConductor()) == 0
        assert s_tot(2j, p, PerfectConductor()) == 0

    @settings(max_examples=300)
    @given(params(), chis, media)
    def test_two_equals_three(self, p, chi, medium):
        if _safe(chi, medium):
            assert s_i(2, chi, p, medium) == s_i(3, chi, p, medium)

    @settings(max_examples=300)
    @given(params(), chis, media)
    def test_sum_is_total(self, p, chi, medium):
        if not _safe(chi, medium):
            return
        parts = [s_i(i, chi, p, medium) for i in range(1, 5)]
        tot = s_tot(chi, p, medium)
        scale = max(abs(tot), sum(abs(v) for v in parts))
        assert abs(sum(parts) - tot) <= 1e-12 * scale

    def test_bad_index(self):
        with pytest.raises(ValueError):
            s_i(5, 0.3, example(), PerfectConductor())

    def test_resonance(self):
        with pytest.raises(ResonantDrive):
            IntegrandParams(1, 1.0, 1.0, 1, 0, 0, 1, 0, 0, 1.0)

    def test_first_diagram_by_hand(self):
        p, chi, med = example(), 0.35, Dielectric(1.7)
        kz, kpar = p.omega_l * chi, p.omega_l * math.sqrt(1 - chi * chi)
        rte, rtm = reflection("TE", kz, kpar, med), reflection("TM", kz, kpar, med)
        pref = -1j * p.photons * p.omega_l ** 4 / (32 * math.pi ** 2) * np.exp(2j * p.omega_l * chi * p.z)
        fd = p.ex2 * p.dx2 + p.ey2 * p.dy2 + p.ez2 * p.dz2
        br = (p.dx2 + p.dy2) * (rte - chi ** 2 * rtm) + 2 * p.dz2 * (1 - chi ** 2) * rtm
        expected = pref / (p.omega + p.omega_l) ** 2 * fd * br
        assert s_i(1, chi, p, med) == pytest.approx(expected, rel=1e-14)


class TestTotal:
    def test_zero_distance_phase(self):
        p = dataclasses.replace(example(), z=0.0)
        v = s_tot(0.6, p, Dielectric(2.0))
        assert v.real == 0 and v.imag != 0

    def test_z_aligned(self):
        p = IntegrandParams(2, 1.4, 1.0, 0.0, 0.0, 0.6, 0.0, 0.0, 0.7, 0.5)
        chi, med = 0.45, Dielectric(3.0)
        kz, kpar = chi, math.sqrt(1 - chi * chi)
        rtm = reflection("TM", kz, kpar, med)
        pref = -2j / (32 * math.pi ** 2) * np.exp(2j * chi * 0.5) / (1.4 ** 2 - 1) ** 2
        expected = pref * 8 * 1.4 ** 2 * 0.6 * 0.7 ** 2 * (1 - chi * chi) * rtm
        assert s_tot(chi, p, med) == pytest.approx(expected, rel=1e-13)

    @given(params(), chis, media, st.floats(0.0, 5.0), st.floats(0.0, 5.0))
    def test_linear_in_drive(self, p, chi, medium, a, b):
        if not _safe(chi, medium):
            return
        base = s_tot(chi, p, medium)
        scaled = dataclasses.replace(p, photons=p.photons * 2, ex2=a * p.ex2, ey2=a * p.ey2, ez2=a * p.ez2)
        assert s_tot(chi, scaled, medium) == pytest.approx(2 * a * base, rel=1e-12, abs=1e-300)

    @given(st.floats(1.0, 8.0), st.floats(0.01, 10.0))
    def test_evanescent_real_beyond_tir(self, n, extra):
        kappa = math.sqrt(n * n - 1) + extra
        v = 1j * s_tot(1j * kappa, example(), Dielectric(n))
        assert abs(v.imag) <= 1e-13 * abs(v)

    @given(params(), chis, st.floats(0.2, 5.0))
    def test_scaling(self, p, chi, a):
        # depends on (w/wL, wL z, chi) up to wL^4 / (w^2 - wL^2)^2, whose
        # frequency-weighted blocks leave an overall a^2
        med = PerfectConductor()
        q = dataclasses.replace(p, omega=a * p.omega, omega_l=a * p.omega_l, z=p.z / a)
        assert s_tot(chi, q, med) == pytest.approx(a * a * s_tot(chi, p, med), rel=1e-10, abs=1e-300)

    def test_array_input(self):
        chi = np.array([0.0, 0.5, 1.0])
        out = s_tot(chi, example(), PerfectConductor())
        for c, v in zip(chi, out):
            assert v == s_tot(c, example(), PerfectConductor())


class TestParallel:
    @settings(max_examples=300)
    @given(params(parallel=True), chis, media)
    def test_matches_total(self, p, chi, medium):
        if not _safe(chi, medium):
            return
        assert s_parallel(chi, p, medium) == pytest.approx(s_tot(chi, p, medium), rel=1e-12, abs=1e-300)

    @given(st.floats(0, 20))
    def test_conductor_evanescent_bracket(self, kappa):
        p = IntegrandParams(1, 1.3, 1.0, 1.0, 0, 0, 1.0, 0, 0, 0.0)
        pref = -1j * 1.0 / (8 * math.pi ** 2) * 1.3 ** 2 / (1.3 ** 2 - 1) ** 2
        # R_TE - chi^2 R_TM at chi = i kappa is -1 + kappa^2
        assert s_parallel(1j * kappa, p, PerfectConductor()) == pytest.approx(pref * (kappa ** 2 - 1), rel=1e-13)

    def test_zero_field(self):
        p = IntegrandParams(1, 1.3, 1.0, 0.0, 0, 0, 1.0, 0, 0, 0.3)
        assert s_parallel(0.4, p, PerfectConductor()) == 0

    def test_rejects_general(self):
        assert not is_parallel(example())
        with pytest.raises(ValueError):
            s_parallel(0.4, example(), PerfectConductor())
