"""Exception types shared across the package."""


class TwoViewError(Exception):
    """Base class for all package errors."""


class NonPositiveDepth(TwoViewError):
    """A world point projects behind one of the cameras."""


class TooFewPoints(TwoViewError):
    """Not enough correspondences for the requested operation."""


class DegenerateConfiguration(TwoViewError):
    """The correspondence geometry does not pin down an essential matrix."""


class RankDeficientEssential(TwoViewError):
    """The essential estimate has fewer than two significant singular values."""


class ZeroVector(TwoViewError):
    """A direction comparison was requested against a zero vector."""


class ConfigInvalid(TwoViewError):
    """Simulation or CLI configuration failed validation."""


class ParseError(TwoViewError):
    """An input file could not be parsed."""
