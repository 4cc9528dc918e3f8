"""Exception types raised across the package."""


class FlamecastError(Exception):
    """Base class for all package errors."""


class EmptyInput(FlamecastError, ValueError):
    pass


class AllZeroWeights(FlamecastError, ValueError):
    pass


class StructureError(FlamecastError, ValueError):
    """The vertex table does not describe a valid S-T-forest."""


class MissingPosition(FlamecastError, ValueError):
    pass


class Infeasible(FlamecastError):
    """No valid layout exists (sink capacity too small)."""


class WrongCase(FlamecastError):
    """The instance is outside the setting a solver handles."""


class ShapeError(FlamecastError, ValueError):
    pass


class NotConvex(WrongCase):
    pass


class TooLarge(FlamecastError):
    pass


class DrawingInvalid(FlamecastError, ValueError):
    pass


class NotThreePartition(FlamecastError, ValueError):
    pass


class UnsupportedCase(FlamecastError):
    pass


class ParseError(FlamecastError, ValueError):
    """An input document is malformed."""
