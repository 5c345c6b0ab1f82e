"""Exceptions raised across the package."""


class DockError(Exception):
    """Base class for all errors raised by :mod:`dronedock`."""


class InvalidNetwork(DockError, ValueError):
    """A receiver network failed validation.

    ``violations`` holds the report produced by :func:`dronedock.model.validate`.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("invalid network: " + "; ".join(self.violations))


class NonConvergence(DockError, RuntimeError):
    """The regime iteration did not settle below the residual tolerance."""

    def __init__(self, message, r_load=None, residual=None):
        self.r_load = r_load
        self.residual = residual
        super().__init__(message)


class NoConsistentState(DockError, RuntimeError):
    """No diode/limit assignment satisfies complementarity (a model bug)."""


class DegenerateInput(DockError, ValueError):
    """Numerically meaningless input, e.g. negative friction or zero power."""


class EmptySweep(DockError, ValueError):
    """A sweep result without points was handed to an extraction routine."""


class CalibrationInfeasible(DockError, RuntimeError):
    """Calibration targets cannot be met inside the parameter bounds."""

    def __init__(self, message, best=None):
        self.best = best or {}
        super().__init__(message)
