"""Exception types raised across the package."""


class GrazingModeError(ValueError):
    """Raised for modes on the light cone (k_z = 0), where 1/k_z diverges."""


class BandError(ValueError):
    """Raised when an operation receives a mode from the wrong band (PW/EW)."""


class ModelDomainError(ValueError):
    """Raised when a material model is evaluated outside its validity regime."""


class NumericalError(ArithmeticError):
    """Raised when an intermediate result is not finite."""


class TableRangeError(ValueError):
    """Raised when a tabulated quantity is queried outside its grid."""


class TableParseError(ValueError):
    def __init__(self, message, row=None):
        self.row = row
        if row is not None:
            message = f"row {row}: {message}"
        super().__init__(message)


class ConfigError(ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class QuadratureError(RuntimeError):
    """Adaptive quadrature exhausted its panel budget.

    ``residual`` holds the error estimate reached before giving up.
    """

    def __init__(self, message, residual):
        self.residual = residual
        super().__init__(f"{message} (residual estimate {residual:.3e})")
