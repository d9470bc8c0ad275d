"""Resonant Casimir-Polder shift of a ground-state atom driven by a Fock-state field
near a dielectric half-space."""

from .errors import (ConfigError, DegenerateDenominator, NonDecayingIntegrand,
                     NonFiniteIntegrand, ResonantDrive, ToleranceNotMet)
from .potential import (PcDecomposition, ShiftResult, pc_asymptotic, pc_decompose,
                        pc_shift, shift_general, shift_parallel_dielectric)
from .quadrature import QuadratureResult, QuadratureSettings
from .units import (CONSTANTS, AtomModel, Dielectric, DriveField, PerfectConductor,
                    Scenario, intensity, polarizability, zeta)

__version__ = "0.1.0"
