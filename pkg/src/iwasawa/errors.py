"""Exception types raised across the package."""


class IwasawaError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(IwasawaError, ValueError):
    """An argument lies outside the domain of an operation (zero input, bad prime, ...)."""


class FormatError(IwasawaError, ValueError):
    """A matrix or document has the wrong shape."""


class UnsupportedPresentationError(IwasawaError):
    """The presentation is valid but not of the kind an operation can handle.

    Homology needs an injective relation matrix and characteristic invariants
    need a square one. Re-present the module (for instance by dropping
    redundant relations) and try again.
    """


class NotTorsionError(IwasawaError):
    """The module is not torsion, so the requested invariant is undefined."""


class HypothesisError(IwasawaError):
    """A standing hypothesis of a formula (such as p >= 5) does not hold."""


class UnsupportedGroupError(IwasawaError):
    """The group descriptor is not one an operation is defined for."""
