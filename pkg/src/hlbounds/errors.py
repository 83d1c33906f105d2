class HLBoundsError(Exception):
    """Base class for every error raised by hlbounds."""


class ArityError(HLBoundsError, ValueError):
    pass


class ParameterDomainError(HLBoundsError, ValueError):
    pass


class DegreeCapError(HLBoundsError, ValueError):
    pass


class CoefficientOverflowError(HLBoundsError, OverflowError):
    def __init__(self, message, k=None):
        super().__init__(message)
        self.k = k


class ConvergenceError(HLBoundsError, RuntimeError):
    """Refinement did not reach the abscissa tolerance.

    ``best_value`` carries the largest value seen before giving up.
    """

    def __init__(self, message, best_value=None):
        super().__init__(message)
        self.best_value = best_value
