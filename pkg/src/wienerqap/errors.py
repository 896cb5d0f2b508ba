"""Exception hierarchy shared by every module of the package."""


class WienerQapError(ValueError):
    """Base class for all errors raised by :mod:`wienerqap`."""


class PermutationInvalid(WienerQapError):
    pass


class ObjectiveOverflow(WienerQapError, OverflowError):
    """The a-priori objective bound does not fit the 128-bit accumulator."""


class DimensionMismatch(WienerQapError):
    pass


class NotSquare(WienerQapError):
    pass


class NotProductMatrix(WienerQapError):
    """Raised when a matrix is not of the form ``a_ij = alpha_i * alpha_j``.

    ``cell`` holds the first offending (row, column), 0-based, when known.
    """

    def __init__(self, message, cell=None):
        super().__init__(message)
        self.cell = cell


class Not1DDistanceMatrix(WienerQapError):
    def __init__(self, message, cell=None):
        super().__init__(message)
        self.cell = cell


class InvalidPartitionInstance(WienerQapError):
    pass


class IndexOutOfRange(WienerQapError):
    pass


class StateInvalid(WienerQapError):
    pass


class InconsistentTables(WienerQapError):
    pass


class InstanceTooLarge(WienerQapError):
    pass


class InvalidDegreeSequence(WienerQapError):
    pass


class NotATreeDegreeSequence(InvalidDegreeSequence):
    pass


class EmptyDegreeSequence(InvalidDegreeSequence):
    pass


class BackboneTooShort(WienerQapError):
    pass


class IncompatibleEll(WienerQapError):
    pass


class Malformed(WienerQapError):
    pass


class BadParams(WienerQapError):
    pass
