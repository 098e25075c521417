"""Shared exception types."""


class UsageError(ValueError):
    """An operation's preconditions are violated."""


class Refusal(RuntimeError):
    """A request is declined for a principled reason (not a bug): the
    instance has orientation number 5, sits in the open regime, or exceeds
    an enumeration budget."""

    def __init__(self, reason: str, rule: str | None = None):
        super().__init__(reason if rule is None else f"{reason} (rule {rule})")
        self.reason = reason
        self.rule = rule


class ConstructionError(RuntimeError):
    """A witness recipe cannot be completed or failed verification."""
