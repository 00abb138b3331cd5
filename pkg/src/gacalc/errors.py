"""Exception types raised by the geometric-algebra kernel."""


class GAError(ValueError):
    """Base class for all kernel errors."""


class SignatureMismatchError(GAError):
    pass


class NotInvertibleError(GAError, ZeroDivisionError):
    pass


class IndefiniteNormError(GAError):
    pass


class DegenerateMetricError(GAError):
    """Raised when an operation needs an invertible pseudoscalar."""


class DefectiveRepresentationError(GAError):
    pass


class BranchViolationError(GAError):
    pass


class NonRealResultError(GAError):
    pass


class ModelError(GAError):
    """Operation not available in the multivector's geometric model."""


class ImaginaryPointPairError(GAError):
    def __init__(self, message, square=None):
        super().__init__(message)
        self.square = square
