"""Exception types shared across the package."""


class QTwistError(Exception):
    """Base class for all package errors."""


class ShapeError(QTwistError):
    """Operands disagree in dimensions, truncation order, or leg count."""


class MalformedWordError(QTwistError):
    """A word letter addresses a generator outside the declared ranges."""


class TruncationError(QTwistError):
    """A series operation received an argument of deformation valuation zero,
    so its truncation at finite order would not terminate."""


class SingularMatrixError(QTwistError):
    """Exact elimination met a square matrix with no inverse."""


class SpecError(QTwistError):
    """An algebra declaration is structurally malformed or inconsistent."""

    def __init__(self, message, field=None):
        super().__init__(message if field is None else f"{field}: {message}")
        self.field = field


class DegenerateRMatrixError(QTwistError):
    """The classical r-matrix of the declaration is singular.

    Only invertible r is supported.  A degenerate r can always be handled by
    passing to the subalgebra on which it is invertible and twisting there;
    that reduction is left to the caller and is out of scope for this engine.
    """


class NoValidXiError(QTwistError):
    """No basis-aligned coefficient vector yields a full-rank classical basis."""

    def __init__(self, message, center_witness=None):
        super().__init__(message)
        self.center_witness = center_witness


class UnsupportedPresetError(QTwistError):
    """The requested construction only exists for a specific preset family."""


class SpecFileError(QTwistError):
    """A spec file failed to parse; carries the offending field path when known."""

    def __init__(self, message, field=None):
        super().__init__(message if field is None else f"{field}: {message}")
        self.field = field
