"""Exception types raised by dsmopt."""


class DsmError(Exception):
    """Base class for all dsmopt errors."""


class DegenerateFilterError(DsmError, ValueError):
    """The shaping filter has an identically zero transfer function."""


class PreconditionError(DsmError, ValueError):
    """An operation was called outside its documented domain."""


class InputDomainError(PreconditionError):
    """An ADC input sample lies outside [-1, 1]."""


class UnboundedLevelSetError(DsmError, ValueError):
    """Requested the explicit level list of an unsaturated quantizer."""


class IncompatibleLevelSetError(DsmError, ValueError):
    """An ADC emitted a value that is not an integer multiple of delta."""


class ContractViolationError(DsmError, RuntimeError):
    """An ADC emitted a value outside its declared output set."""


class NonFiniteError(DsmError, FloatingPointError):
    """A simulated signal overflowed or became NaN."""


class TruncationBudgetError(DsmError, RuntimeError):
    """The impulse series did not meet its tail tolerance within budget.

    Attributes
    ----------
    partial_sum : float
        Sum of ``|c_l|`` over the coefficients computed before giving up.
    tail_bound : float
        Best certified tail bound reached (may be ``inf``).
    """

    def __init__(self, message, partial_sum, tail_bound):
        super().__init__(message)
        self.partial_sum = partial_sum
        self.tail_bound = tail_bound
