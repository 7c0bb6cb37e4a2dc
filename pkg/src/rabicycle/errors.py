"""Error taxonomy for the cycle library.

Every failure mode a caller can act on gets its own class; the CLI maps
ConfigError subclasses to exit code 2 and whole-sweep failure to 3.
"""


class RabiError(Exception):
    """Base class for all library errors."""


class ParameterError(RabiError):
    """Model parameters outside their domain (g < 0, omega <= 0, ...)."""


class SizingError(RabiError):
    """Requested boson cutoff exceeds what the platform can allocate."""


class ConvergenceError(RabiError):
    """Adaptive eigensolve hit the hard cutoff cap before meeting tol."""


class DegeneracyError(RabiError):
    """Operation refused at or near a level degeneracy."""


class RangeError(RabiError):
    """No root bracket found inside the operating range."""


class IntegrationError(RabiError):
    """Quadrature failed or was refused; carries the partial estimate."""

    def __init__(self, message, estimate=None, error_bound=None):
        super().__init__(message)
        self.estimate = estimate
        self.error_bound = error_bound


class CapabilityError(RabiError):
    """Requested combination (knob, method) has no implementation by design."""


class CycleError(RabiError):
    """A cycle stage failed; wraps the stage name and the underlying error.

    partial holds whatever corner values were already solved when the
    stage failed, so sweep error rows can still record them.
    """

    def __init__(self, stage, cause, partial=None):
        super().__init__(f"cycle stage '{stage}' failed: {cause}")
        self.stage = stage
        self.cause = cause
        self.partial = dict(partial or {})


class ConfigError(RabiError):
    """Base for sweep-configuration problems (CLI exit code 2)."""


class ConfigSyntaxError(ConfigError):
    """Malformed config line; carries the 1-based line number."""

    def __init__(self, line_no, message):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class ConfigSemanticError(ConfigError):
    """Well-formed config with an invalid value; names the offending key."""

    def __init__(self, key, message):
        super().__init__(f"key '{key}': {message}")
        self.key = key
