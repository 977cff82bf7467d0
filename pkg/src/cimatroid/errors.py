"""Exception types shared across the package."""


class CIMatroidError(Exception):
    """Base class for all errors raised by this package."""


class CapacityError(CIMatroidError, ValueError):
    """A ground set or enumeration request exceeds the supported bounds."""


class FormatError(CIMatroidError, ValueError):
    """A text input does not conform to its file format."""


class AxiomError(CIMatroidError, ValueError):
    """A precondition axiom system is violated; carries the witnesses."""

    def __init__(self, message, witnesses=()):
        super().__init__(message)
        self.witnesses = tuple(witnesses)


class LoopError(CIMatroidError, ValueError):
    """A matroid operation that requires looplessness met a loop."""

    def __init__(self, message, element=None):
        super().__init__(message)
        self.element = element


class SubmodularityError(CIMatroidError, ValueError):
    """A set function is not submodular; carries the failing pairs."""

    def __init__(self, message, failures=()):
        super().__init__(message)
        self.failures = tuple(failures)


class NotSymmetricError(CIMatroidError, ValueError):
    """A covariance candidate is not symmetric at the witness entry."""

    def __init__(self, message, entry=None):
        super().__init__(message)
        self.entry = entry


class NotPositiveDefiniteError(CIMatroidError, ValueError):
    """A covariance candidate has a non-positive leading principal minor."""

    def __init__(self, message, order=None, minor=None):
        super().__init__(message)
        self.order = order
        self.minor = minor


class InternalCheckError(CIMatroidError, RuntimeError):
    """A runtime consistency assertion fired.

    These assertions encode well-definedness facts that hold whenever the
    documented preconditions do, so reaching one means either the input
    escaped validation or the implementation is wrong.
    """
