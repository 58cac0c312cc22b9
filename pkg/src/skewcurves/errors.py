"""Exception types raised by the curve operations."""


class SkewCurveError(ValueError):
    """Base class for domain errors in this package."""


class DegenerateCurveError(SkewCurveError):
    """The hedgehog collapses to a point (or the function is identically zero)."""


class NoClosedInvoluteError(SkewCurveError):
    """A closed skew involute does not exist for the given angle and curve."""


class RightAngleError(SkewCurveError):
    """The operation needs cos(alpha) != 0."""


class StationaryLineError(SkewCurveError):
    """The rotated tangent line family is stationary, so no envelope point exists."""


class NonConvexError(SkewCurveError):
    """The requested curve would not be strictly convex."""
