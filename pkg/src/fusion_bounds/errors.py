"""Exception hierarchy shared by all modules."""


class FusionError(Exception):
    """Base class for every error raised by this package."""


class IndexOutOfRange(FusionError, ValueError):
    pass


class EmptyInput(FusionError, ValueError):
    pass


class InvalidGluing(FusionError, ValueError):
    pass


class NotGeneric(FusionError, ValueError):
    pass


class NoLayout(FusionError, ValueError):
    pass


class EmptyPolyhedron(FusionError):
    pass


class Unbounded(FusionError):
    pass


class UnboundedDual(Unbounded):
    """Some ray of the fusion polytope has positive objective value."""


class Infeasible(FusionError):
    """No non-negative atom assignment reproduces the measurements.

    ``certificate`` is a vector y over regions with A^T y <= 0 and n.y > 0
    when one is available.
    """

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class TooLarge(FusionError):
    """A size guard was exceeded."""
