"""Exception types raised by fockcp."""

from __future__ import annotations


class FockCPError(Exception):
    """Base class for all fockcp errors."""


class ResonantDrive(FockCPError, ValueError):
    """The drive frequency coincides with the atomic transition frequency."""


class DegenerateDenominator(FockCPError, ArithmeticError):
    """A Fresnel denominator vanished (grazing or branch-point input)."""


class ToleranceNotMet(FockCPError, RuntimeError):
    """Adaptive quadrature hit its panel cap before reaching the target error.

    Attributes
    ----------
    value : float
        Best estimate of the integral at the point of failure.
    error_estimate : float
        Error estimate belonging to ``value``.
    panels_used : int
        Number of panels in the final partition.
    """

    def __init__(self, message: str, value: float = float("nan"),
                 error_estimate: float = float("inf"), panels_used: int = 0):
        super().__init__(message)
        self.value = value
        self.error_estimate = error_estimate
        self.panels_used = panels_used


class NonFiniteIntegrand(FockCPError, ArithmeticError):
    """The integrand returned NaN or an infinity."""


class NonDecayingIntegrand(FockCPError, ArithmeticError):
    """The evanescent integrand has not decayed at the truncation point."""


class ConfigError(FockCPError, ValueError):
    """Invalid configuration file.

    Attributes
    ----------
    field : str or None
        Dotted name of the offending key, e.g. ``"drive.omega_rad_per_s"``.
    line : int or None
        1-based line number in the configuration text, when known.
    """

    def __init__(self, message: str, field: str | None = None, line: int | None = None):
        self.field = field
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(field)
        prefix = f"[{', '.join(where)}] " if where else ""
        super().__init__(prefix + message)
