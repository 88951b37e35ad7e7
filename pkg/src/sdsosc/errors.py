"""Exception taxonomy shared by all modules."""


class SdsError(Exception):
    """Base class for every error raised by this package."""


class ParameterDomainError(SdsError, ValueError):
    """A physical parameter is outside its admissible domain."""


class UnitSystemError(SdsError, ValueError):
    """An operation that is only meaningful in one unit system got the other."""


class QuantumNumberError(SdsError, ValueError):
    """Quantum numbers violate their admissibility constraints (parity, ordering)."""


class UndeformedLimitError(SdsError, ValueError):
    """A deformed-only quantity was requested at zero deformation (it diverges)."""


class UnsupportedRepresentationError(SdsError, ValueError):
    """The bounded-momentum representation does not exist for these parameters."""


class OutOfRegimeError(SdsError, ArithmeticError):
    """A high-temperature/asymptotic formula was evaluated outside its validity domain."""


class NumericError(SdsError, RuntimeError):
    """An iterative numerical procedure failed to converge."""
