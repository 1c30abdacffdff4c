"""Exception types shared across the package."""


class DegreeError(ValueError):
    """Degrees of two operands disagree, or a degree is out of range."""


class CycleFormatError(ValueError):
    """Malformed cycle text."""


class RepeatedPointError(CycleFormatError):
    """A point occurs twice in a cycle expression."""


class ArgumentError(ValueError):
    """An argument violates a documented precondition."""


class NotTransitiveError(ValueError):
    """Operation requires a transitive group."""


class InvalidBlocksError(ValueError):
    """A claimed block system is not invariant or not a partition."""


class CapError(RuntimeError):
    """An enumeration exceeded its element cap."""


class SearchExhausted(RuntimeError):
    """A randomized search ran out of budget without deciding the question."""


class FeasibilityViolation(RuntimeError):
    """A structural hypothesis about a kernel socle failed to hold."""


class FrameError(RuntimeError):
    """Product relabeling did not produce the expected wreath embedding."""


class StandardizeError(RuntimeError):
    """Wreath standardization hypothesis or postcondition failed."""


class GroupFileError(ValueError):
    """A group input file could not be parsed."""
