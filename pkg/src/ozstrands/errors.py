"""Exception hierarchy shared by all modules."""


class DomainError(ValueError):
    """An input that is well formed but mathematically out of bounds."""


class ParameterError(DomainError):
    """Parameters (n, k, S, states) that are inconsistent with each other."""


class InvalidGenerator(DomainError):
    """A candidate basis element violating one of the validity conditions."""

    def __init__(self, condition, message):
        super().__init__(f"condition ({condition}): {message}")
        self.condition = condition


class ConsistencyError(RuntimeError):
    """An internal invariant failed (e.g. d∘d != 0 on assembled matrices)."""


class NotationError(DomainError):
    """Malformed element text; `position` is the 0-based offset of the problem."""

    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position
