"""Exception hierarchy shared across the package."""


class ZengaError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(ZengaError, ValueError):
    """A distribution or procedure parameter is out of range."""


class DomainError(ZengaError, ValueError):
    """An argument lies outside the domain of a function."""


class DataError(ZengaError, ValueError):
    """Observations are unusable (non-positive, non-finite, unparseable)."""


class SampleSizeError(ZengaError, ValueError):
    """The sample is too small for the requested computation."""


class DegenerateFitError(ZengaError, ArithmeticError):
    """The intercept estimate is not positive, so the tail index is undefined."""


class SamplingOverflowError(ZengaError, OverflowError):
    """A sampler produced values that are not representable as finite doubles."""


class ConfigError(ZengaError, ValueError):
    """A power-study configuration failed validation."""


class CellAbortedError(ZengaError, RuntimeError):
    """Too many replications of a power-study cell failed."""
