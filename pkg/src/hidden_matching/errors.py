"""Shared exception types."""


class CapExceededError(ValueError):
    """An enumeration or exact-evaluation cap would be exceeded.

    Raised instead of silently attempting an infeasible computation; callers
    can widen the relevant cap explicitly if they really mean it.
    """
