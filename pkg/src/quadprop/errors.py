"""Exception types shared across the package.

Every error carries a machine-readable ``code`` and the name of the module
that raised it, so the CLI can emit structured error JSON.
"""

from __future__ import annotations


class QuadpropError(ValueError):
    """Base class for all domain errors raised by this package."""

    code = "DOMAIN_ERROR"
    module = "quadprop"

    def __init__(self, message: str, context: dict | None = None):
        super().__init__(message)
        self.context = context or {}

    def to_json(self) -> dict:
        return {
            "code": self.code,
            "module": self.module,
            "message": str(self),
            "context": self.context,
        }


class ConfigError(QuadpropError):
    code = "CONFIG_INVALID"
    module = "cli"


class UnknownPresetError(QuadpropError):
    code = "UNKNOWN_PRESET"
    module = "coefficients"


class CoefficientSingularityError(QuadpropError):
    """a(t) vanishes (or a coefficient blows up) inside the requested interval."""

    code = "COEFFICIENT_SINGULARITY"
    module = "coefficients"


class ValidityWindowError(QuadpropError):
    """Requested time lies at or beyond a focal time / zero of mu' where the
    kernel formulas stop being evaluable."""

    code = "VALIDITY_WINDOW"
    module = "green1d"


class EdgeDecayError(QuadpropError):
    code = "EDGE_DECAY"
    module = "cauchy"


class GridMismatchError(QuadpropError):
    code = "GRID_MISMATCH"
    module = "cauchy"


class BlowupError(QuadpropError):
    """mu(t) <= 0: the NLS particular solution has reached its blow-up time."""

    code = "BLOWUP_REACHED"
    module = "nls"


class FieldZeroError(QuadpropError):
    code = "FIELD_ZERO"
    module = "magnetic3d"
