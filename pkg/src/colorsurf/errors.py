"""Exception types shared across the package."""


class ColorsurfError(Exception):
    """Base class for all package errors."""


class SpaceMismatchError(ColorsurfError):
    """Operands live on different qubit index spaces."""


class SingularMatrixError(ColorsurfError):
    """Inversion requested for a matrix that is not full rank."""


class LatticeDimensionError(ColorsurfError, ValueError):
    """Lattice generator rejected its dimensions."""


class ColexFormatError(ColorsurfError, ValueError):
    """A colex document failed schema parsing."""


class ColexValidationError(ColorsurfError, ValueError):
    """A colex violates a structural invariant."""


class ConventionError(ColorsurfError, ValueError):
    """Map-building conventions are malformed for the given lattice."""


class MapConsistencyError(ColorsurfError):
    """Internal consistency failure while building or applying the map."""


class MapFileError(ColorsurfError, ValueError):
    """A map artifact file is malformed or does not match its lattice."""


class DecodeFaultError(ColorsurfError):
    """Decoding hit an impossible state (e.g. odd defect count)."""
