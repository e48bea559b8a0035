"""Exception types shared across the library."""


class SkewdetError(Exception):
    """Base class for all library errors."""


class SpecMismatchError(SkewdetError):
    """Operands live under different field specifications."""


class PrecisionError(SkewdetError):
    """A result would depend on coefficients beyond the known horizon."""


class ContractViolationError(SkewdetError):
    """A documented precondition or internal invariant was violated."""


class UnsupportedTwistError(SkewdetError):
    """The requested operation is undefined for the given twist.

    Typical case: the order valuation does not extend to a discrete
    valuation when the twist has a nonzero derivation, so ``ord_det``
    rejects differential specs.
    """


class EngineDisagreementError(SkewdetError):
    """Two valuation engines returned different results for one input."""


class ParseError(SkewdetError):
    """A scalar string or problem file could not be parsed."""
