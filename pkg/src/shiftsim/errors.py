"""Exception types shared across the simulator."""


class ShiftSimError(Exception):
    """Base class for all simulator errors."""


class InvalidGeometry(ShiftSimError):
    """Code parameters cannot host both codewords (or break the boundary rule)."""


class OutOfRangeShift(ShiftSimError):
    """A shift would move amplitude past the edge of a hard-boundary ladder."""


class NotInCodeSpace(ShiftSimError):
    """A logical measurement was requested on a state outside the code space."""


class DimensionTooLarge(ShiftSimError):
    """The dense operator oracle only supports small dimensions."""


class NonPositiveSpacing(ShiftSimError):
    """Continuous peak spacings must be strictly positive."""


class NonPositiveParameter(ShiftSimError):
    """A strictly positive numeric parameter was zero or negative."""


class UnknownSession(ShiftSimError):
    """No session exists for the given id."""


class InvalidAction(ShiftSimError):
    """The requested session action does not apply to this code kind or state."""
