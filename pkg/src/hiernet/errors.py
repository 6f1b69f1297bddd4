"""Exception types shared across the package."""


class HiernetError(Exception):
    """Base class for all package-specific errors."""


class GraphConstructionError(HiernetError):
    """Malformed input while building a graph (bad endpoint, self-loop)."""


class ValidationError(HiernetError):
    """Malformed data handed to a checker (unknown vertex id, absent edge)."""


class CompositionError(HiernetError):
    """A hierarchical composition violates one of its structural conditions."""


class SizeBudgetError(HiernetError):
    """A requested topology exceeds the configured vertex budget."""

    def __init__(self, message: str, required: int, budget: int):
        super().__init__(message)
        self.required = required
        self.budget = budget


class PreconditionError(HiernetError):
    """The constructive builder was invoked outside its guarantee."""


class SearchBudgetError(HiernetError):
    """A bounded backtracking search exhausted its node budget."""

    def __init__(self, message: str, nodes: int):
        super().__init__(message)
        self.nodes = nodes


class InvariantViolationError(HiernetError):
    """An internal property that the theory guarantees failed to hold."""
