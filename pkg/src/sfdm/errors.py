"""Exception types shared across the package."""


class SfdmError(Exception):
    """Base class for all library errors."""


class InvalidParam(SfdmError, ValueError):
    """A waveform or experiment parameter violates its admissible range."""


class DimensionMismatch(SfdmError, ValueError):
    """A vector or matrix has the wrong length/shape for the block size N."""


class IndexOutOfRange(SfdmError, IndexError):
    """Subcarrier index outside 0..N-1."""


class OutOfDomain(SfdmError, ValueError):
    """Time or frequency argument outside the waveform's domain."""


class DelayExceedsCpp(SfdmError, ValueError):
    """A path delay is not covered by the chirp periodic prefix."""


class NumericalFailure(SfdmError, ArithmeticError):
    """A linear solve did not reach the required residual."""
