"""Exception hierarchy shared by every parthom module."""


class ParthomError(Exception):
    """Base class for all errors raised by parthom."""


class DegreeMismatch(ParthomError, ValueError):
    """Two objects that must live on the same point set do not."""


class CapExceeded(ParthomError):
    """An enumeration would exceed the caller-supplied object cap.

    Callers that hit this are expected to switch to a counting method
    (Burnside) instead of explicit enumeration.
    """

    def __init__(self, what, size, cap):
        super().__init__(f"{what}: {size} objects exceeds cap {cap}")
        self.size = size
        self.cap = cap


class IntegrityError(ParthomError):
    """Bundled data failed validation (wrong group order, degree, ...)."""


class UnsupportedGroup(ParthomError):
    """The requested group or family is outside the catalog."""


class ConsistencyError(ParthomError):
    """An internal cross-check failed; indicates a bug rather than bad input."""
