import math

import numpy as np
import pytest

from fockcp import ConfigError, Dielectric, PerfectConductor
from fockcp.config import PRESETS, SweepSpec, load_config, parse_config_text

BASE = """\
[atom]
omega0_rad_per_s = 1.55e14
dipole_c_m = 5.85e-29

[drive]
omega_rad_per_s = 1.50e14
intensity_w_per_cm2 = 5.0

[medium]
kind = "dielectric"
refractive_index = 2.0

[sweep]
z_min_m = 1e-6
z_max_m = 1e-5
points = 5
"""


def replace(old, new, text=BASE):
    assert old in text
    return text.replace(old, new)


class TestPresets:
    @pytest.mark.parametrize("name", PRESETS)
    def test_loads(self, name):
        cfg = load_config(preset=name)
        assert cfg.atom.omega0 == 1.55e14
        assert cfg.atom.dx2 == pytest.approx(5.85e-29 ** 2, rel=1e-15)
        assert cfg.drive.omega_l == 1.50e14
        assert cfg.drive.classical_intensity == pytest.approx(5e4, rel=1e-15)

    def test_fig5_media(self):
        cfg = load_config(preset="fig5")
        assert [lab for lab, _ in cfg.media] == ["pc", "n4.5", "n2", "n1.3"]
        assert isinstance(cfg.media[0][1], PerfectConductor)
        assert cfg.media[3][1] == Dielectric(1.3)

    def test_fig4_sweep(self):
        sw = load_config(preset="fig4").sweep
        assert (sw.z_min, sw.z_max, sw.points, sw.spacing) == (0.5e-6, 50e-6, 400, "log")

    def test_file_overrides_preset_section(self, tmp_path):
        p = tmp_path / "o.toml"
        p.write_text('[sweep]\nz_min_m = 1e-6\nz_max_m = 2e-6\npoints = 3\nspacing = "linear"\n')
        cfg = load_config(p, preset="fig4")
        assert cfg.sweep.points == 3 and isinstance(cfg.media[0][1], PerfectConductor)

    def test_unknown_preset(self):
        with pytest.raises(ConfigError):
            load_config(preset="fig6")


class TestParse:
    def test_base(self):
        cfg = parse_config_text(BASE)
        assert cfg.media == (("n2", Dielectric(2.0)),)
        assert cfg.drive.ex2 == 1.0 and cfg.drive.ey2 == 0.0
        assert cfg.quadrature.rel_tol == 1e-10

    def test_photons(self):
        text = replace("intensity_w_per_cm2 = 5.0",
                       "photons = 1000\nsingle_photon_field_v_per_m = 2.0\npolarization_axis = \"z\"")
        d = parse_config_text(text).drive
        assert d.photons == 1000 and d.ez2 == 4.0 and d.ex2 == 0.0

    def test_components(self):
        text = replace("dipole_c_m = 5.85e-29", "dx2_c2m2 = 1e-58\ndz2_c2m2 = 2e-58")
        a = parse_config_text(text).atom
        assert (a.dx2, a.dy2, a.dz2) == (1e-58, 0.0, 2e-58)

    def test_quadrature_section(self):
        cfg = parse_config_text(BASE + "\n[quadrature]\nrel_tol = 1e-8\nmax_panels = 100\n")
        assert cfg.quadrature.rel_tol == 1e-8 and cfg.quadrature.max_panels == 100

    def test_perfect_conductor(self):
        text = replace('kind = "dielectric"\nrefractive_index = 2.0', 'kind = "perfect_conductor"')
        assert parse_config_text(text).media == (("pc", PerfectConductor()),)

    @pytest.mark.parametrize("old,new,field,fragment", [
        ("refractive_index = 2.0", "refractive_index = 0.5", "medium.refractive_index",
         "refractive index must be >= 1"),
        ("omega_rad_per_s = 1.50e14\n", "", "drive.omega_rad_per_s", "missing"),
        ("points = 5", "points = 1", "sweep.points", "points"),
        ("points = 5", "points = 2000000", "sweep.points", "points"),
        ("z_max_m = 1e-5", "z_max_m = 1e-7", "sweep.z_max_m", "exceed"),
        ("dipole_c_m = 5.85e-29", "dipole_c_m = \"big\"", "atom.dipole_c_m", "number"),
        ("intensity_w_per_cm2 = 5.0", "intensity_w_per_cm2 = 5.0\nphotons = 3", "drive.intensity_w_per_cm2",
         "exactly one"),
        ("[sweep]", "[sweep]\nstep = 1", "sweep.step", "unknown key"),
        ('kind = "dielectric"', 'kind = "metal"', "medium.kind", "kind"),
        ("omega0_rad_per_s = 1.55e14", "omega0_rad_per_s = -1.0", "atom.omega0_rad_per_s", "> 0"),
    ])
    def test_errors(self, old, new, field, fragment):
        with pytest.raises(ConfigError) as info:
            parse_config_text(replace(old, new))
        assert info.value.field == field
        assert fragment in str(info.value)

    def test_error_has_line(self):
        with pytest.raises(ConfigError) as info:
            parse_config_text(replace("refractive_index = 2.0", "refractive_index = 0.5"))
        assert info.value.line == 11
        assert "line 11" in str(info.value)

    def test_missing_section(self):
        with pytest.raises(ConfigError) as info:
            parse_config_text(BASE.split("[sweep]")[0])
        assert info.value.field == "sweep"

    def test_unknown_section(self):
        with pytest.raises(ConfigError):
            parse_config_text(BASE + "\n[plot]\nx = 1\n")

    def test_syntax_error(self):
        with pytest.raises(ConfigError) as info:
            parse_config_text(BASE + "\nthis is not toml\n")
        assert info.value.line is not None

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError, match="cannot read"):
            load_config(tmp_path / "absent.toml")

    def test_duplicate_index(self):
        with pytest.raises(ConfigError, match="duplicate"):
            parse_config_text(replace("refractive_index = 2.0", "refractive_indices = [2.0, 2]"))

    def test_resonance_not_a_parse_error(self):
        # the sweep reports resonance with its own exit status
        cfg = parse_config_text(replace("omega_rad_per_s = 1.50e14", "omega_rad_per_s = 1.55e14"))
        assert cfg.drive.omega_l == cfg.atom.omega0


class TestSweepSpec:
    def test_log(self):
        g = SweepSpec(1e-6, 1e-4, 3, "log").grid()
        np.testing.assert_allclose(g, [1e-6, 1e-5, 1e-4], rtol=1e-14)
        assert g[0] == 1e-6 and g[-1] == 1e-4

    def test_linear(self):
        np.testing.assert_allclose(SweepSpec(1.0, 2.0, 3, "linear").grid(), [1.0, 1.5, 2.0])

    @pytest.mark.parametrize("args", [(0.0, 1.0, 3, "log"), (2.0, 1.0, 3, "log"),
                                      (1.0, 2.0, 1, "log"), (1.0, 2.0, 3, "cubic"),
                                      (1.0, math.inf, 3, "log")])
    def test_rejects(self, args):
        with pytest.raises(ValueError):
            SweepSpec(*args)
