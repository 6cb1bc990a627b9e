"""Exception hierarchy shared by every layer of the package."""


class NumradError(Exception):
    """Base class for all errors raised by numrad."""


class ConfigError(NumradError, ValueError):
    """Malformed input files, flags, norm strings or campaign configs."""


class InvalidSpec(ConfigError):
    """A norm descriptor that does not define a unitarily invariant norm."""


class DimensionMismatch(NumradError, ValueError):
    pass


class NotSquare(DimensionMismatch):
    pass


class NumericalError(NumradError, ArithmeticError):
    """Failures of the numerical kernels themselves."""


class NonFinite(NumericalError):
    pass


class NotHermitian(NumericalError):
    pass


class NotPositiveDefinite(NumericalError):
    pass


class IterationLimit(NumericalError):
    pass
