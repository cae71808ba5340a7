"""Exception and warning types shared across the package."""


class RKHSApproxError(Exception):
    """Base class for all errors raised by this package."""


class NonPositiveWeight(RKHSApproxError):
    pass


class DuplicatePoint(RKHSApproxError):
    pass


class EmptySupport(RKHSApproxError):
    pass


class InvalidSampler(RKHSApproxError):
    pass


class DomainMismatch(RKHSApproxError):
    pass


class DimensionMismatch(RKHSApproxError):
    pass


class UnsupportedCombination(RKHSApproxError):
    pass


class UnsupportedExponent(RKHSApproxError):
    pass


class RadiusOutOfRange(RKHSApproxError):
    pass


class InvalidResolution(RKHSApproxError):
    pass


class DegenerateSpan(RKHSApproxError):
    pass


class SchemaError(RKHSApproxError):
    """Input document failed validation; ``path`` locates the offending key."""

    def __init__(self, path, message):
        self.path = path
        self.message = message
        super().__init__(f"{path}: {message}")


class InvariantViolation(RKHSApproxError):
    pass


class RenormalizationWarning(UserWarning):
    """Measure weights deviated from unit total mass by more than 1e-9."""


class NegativeNormWarning(UserWarning):
    """A squared norm came out below -1e-9 before being clamped to zero."""


class NonSmoothPointWarning(UserWarning):
    """Gradient requested at a kink; a subgradient element was returned."""


class QuadratureTooCoarse(UserWarning):
    """Angular resolution too low for the requested frequency (aliasing)."""


class NotConvergedWarning(UserWarning):
    """Iterative solve hit the iteration cap before meeting the tolerance."""
