import math
import sys
from collections import defaultdict
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from fockcp import AtomModel, DriveField, PerfectConductor, Scenario  # noqa: E402

CS_OMEGA0 = 1.55e14
CS_DIPOLE = 5.85e-29
CS_OMEGA_L = 1.50e14
CS_INTENSITY = 5.0e4  # W/m^2, i.e. 5 W/cm^2
C = 299_792_458.0


def cs_scenario(z=None, zeta=None, medium=None, intensity=CS_INTENSITY):
    """Cs atom, drive and dipole along x, classical intensity."""
    if z is None:
        z = zeta * C / (2.0 * CS_OMEGA_L)
    atom = AtomModel(CS_OMEGA0, dx2=CS_DIPOLE ** 2)
    drive = DriveField(CS_OMEGA_L, ex2=1.0, classical_intensity=intensity)
    return Scenario(atom, drive, medium or PerfectConductor(), z)


@pytest.fixture
def cs():
    return cs_scenario


# ---------------------------------------------------------------------------
# acceptance summary: one line per criterion

_results = defaultdict(list)
_titles = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        number = marker.args[0]
        _titles[number] = marker.args[1]
        details = [v for k, v in item.user_properties if k == "measured"]
        _results[number].append((item.name, rep.passed, details))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_results):
        runs = _results[number]
        ok = all(passed for _, passed, _ in runs)
        tr.write_line(f"ACCEPTANCE {number:>2} {'PASS' if ok else 'FAIL'}  {_titles[number]}")
        for name, passed, details in runs:
            for d in details:
                tr.write_line(f"               {'ok  ' if passed else 'FAIL'} {name}: {d}")


@pytest.fixture
def measured(record_property):
    """Attach a measured quantity to the acceptance summary line."""
    def record(text):
        record_property("measured", text)
    return record


def rel(a, b):
    return abs(a - b) / abs(b) if b != 0 else abs(a)


def isclose(a, b, rtol):
    return math.isclose(a, b, rel_tol=rtol, abs_tol=0.0)
