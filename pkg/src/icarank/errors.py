"""Exception types shared across the toolkit."""


class IcarankError(Exception):
    """Base class for all toolkit errors."""


class ConstructionError(IcarankError, ValueError):
    """A group constructor was given invalid parameters."""


class SpecParseError(IcarankError, ValueError):
    """A group or family specification string could not be parsed."""


class CapExceeded(IcarankError, RuntimeError):
    """A configured size cap would be exceeded by the request."""


class NotASubgroupError(IcarankError, ValueError):
    """A member set is not a subgroup of the stated parent group."""


class NotNormalError(IcarankError, ValueError):
    """A quotient was requested by a non-normal subgroup."""


class InternalInvariantError(IcarankError, RuntimeError):
    """An internal consistency check failed; indicates a bug, never bad input."""


class RankSearchTimeout(IcarankError, RuntimeError):
    """The exact rank search ran out of budget.

    Carries the best bounds established before the deadline, so callers can
    still report a bounded (non-exact) result.
    """

    def __init__(self, lower: int, upper: int | None, message: str = ""):
        self.lower = lower
        self.upper = upper
        super().__init__(message or f"rank search timed out with bounds [{lower}, {upper}]")
