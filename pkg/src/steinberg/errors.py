"""Exception hierarchy shared by all modules."""


class SteinbergError(Exception):
    """Base class for every error raised by this package."""


class WindowError(SteinbergError):
    """A boundary matrix needed for a homology computation lies outside the window."""


class NotACycle(SteinbergError):
    pass


class DimMismatch(SteinbergError, ValueError):
    pass


class BadLine(SteinbergError, ValueError):
    """The subspace passed as a line does not have dimension one."""


class CapExceeded(SteinbergError):
    """Refusing to materialize a complex beyond the enumeration cap."""


class NotASimplicialMap(SteinbergError):
    pass


class NotACover(SteinbergError):
    """A simplex of the chain lies in neither half of a Mayer-Vietoris cover."""


class ZeroGenerator(SteinbergError, ValueError):
    pass


class SignConventionUnset(SteinbergError):
    """The basis symbol failed to pin down a global sign (comparison is not +-1)."""


class NotInvertible(SteinbergError, ValueError):
    pass


class CompositionMismatch(SteinbergError):
    pass


class ParseError(SteinbergError, ValueError):
    """Malformed vector or symbol text."""
