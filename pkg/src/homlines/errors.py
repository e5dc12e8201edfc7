"""Exception types shared across the library."""


class HomlinesError(Exception):
    """Base class for all library errors."""


class UnsupportedType(HomlinesError):
    """Requested (family, rank) is not a supported Dynkin type."""


class UnknownNode(HomlinesError):
    """Node label outside the diagram."""


class NodeNotMarked(HomlinesError):
    """Operation requires the node to be marked."""


class MultipleMarks(HomlinesError):
    """Operation requires a single-marked diagram."""


class UnsupportedCase(HomlinesError):
    """Closed-form splitting requested outside its valid range."""


class CaseIHasNoRelativeTangent(HomlinesError):
    """The universal family equals the space itself; nothing to restrict."""


class Unclassified(HomlinesError):
    """A tangent-direction factor falls outside the known taxonomy."""


class ProfileRankMismatch(HomlinesError):
    """Splitting profiles disagree on the bundle rank."""


class CapTooLarge(HomlinesError):
    """Requested degree cap exceeds the variety dimension."""


class DegreeOverCap(HomlinesError):
    """Requested degree exceeds the ring's cap."""


class OutOfBox(HomlinesError):
    """Partition does not fit the Grassmannian box."""


class PreconditionViolated(HomlinesError):
    """Arguments outside the valid range of a verification routine."""


class DeductionFailed(HomlinesError):
    """Coefficient constraints did not match the expected shapes."""

    def __init__(self, message: str, constraints=None):
        super().__init__(message)
        self.constraints = constraints or []


class ParseError(HomlinesError):
    """Space specification syntax error; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class RankError(HomlinesError):
    """Space specification names an unsupported rank."""


class NodeOutOfRange(HomlinesError):
    """Marked node outside 1..rank."""


class DuplicateMark(HomlinesError):
    """The same node marked twice in one factor."""
