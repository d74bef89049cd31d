class MinkowskiError(Exception):
    """Generic Minkowski product error."""


class InvalidInput(MinkowskiError):
    """Raised for malformed arguments, files or unknown identifiers."""


class DegenerateFrame(MinkowskiError):
    """Raised when a canonical frame does not exist for the input."""


class ConeUndefined(MinkowskiError):
    """Raised when the support cone of a set seen from 0 spans pi or more."""


class NotAMember(MinkowskiError):
    """Raised when a proposed star center is not in the product."""


class InternalInconsistency(MinkowskiError):
    """Raised when a closed-form claim fails its own verification."""


class NumericalFailure(MinkowskiError):
    """Raised when an eigen-solver fails to converge."""
