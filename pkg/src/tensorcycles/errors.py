"""Exception types shared across the library."""


class TensorCyclesError(Exception):
    """Base class for every error raised by this library."""


class ParseError(TensorCyclesError):
    """Malformed textual input (scalar, field name, instance file)."""


class FieldMismatch(TensorCyclesError):
    """Operands or operations tied to incompatible fields."""


class DivisionByZero(TensorCyclesError, ZeroDivisionError):
    """Division by the zero scalar."""


class AmbientMismatch(TensorCyclesError):
    """Vectors or subspaces with different ambient dimensions were combined."""


class NotSymmetric(TensorCyclesError):
    """A symmetric matrix was required."""


class NotSquare(TensorCyclesError):
    """A square matrix was required."""


class EmptyMultiset(TensorCyclesError):
    """Symmetrization of the empty multiset was requested."""


class UnknownVertex(TensorCyclesError):
    """An edge references a vertex name that is not declared."""


class EmptyStructuralData(TensorCyclesError):
    """A construction received an empty multiset or tuple."""


class DifferentComponents(TensorCyclesError):
    """A tree path between vertices of different components was requested."""


class NotInAlgebraicCycleSpace(TensorCyclesError):
    """The vector to lift is not an algebraic cycle."""


class NotStarShaped(TensorCyclesError):
    """The star-defect analysis needs a common source tensor and distinct targets."""


class WrongCharacteristic(TensorCyclesError):
    """The operation requires a specific field characteristic."""


class WrongConstruction(TensorCyclesError):
    """The operation requires a specific edge construction."""


class InternalInconsistency(TensorCyclesError):
    """Two theorem-backed computations of the same quantity disagree.

    This always indicates a bug in the library, never bad input.
    """
