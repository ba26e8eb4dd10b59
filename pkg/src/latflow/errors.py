"""Exception types shared across the package."""


class LatflowError(Exception):
    """Base class for all package errors."""


class GraphError(LatflowError):
    """Malformed graph input or an edge/vertex that does not belong to the host."""


class DisconnectedGraphError(GraphError):
    def __init__(self, components):
        self.components = [sorted(c, key=repr) for c in components]
        parts = "; ".join("{" + ", ".join(map(str, c)) + "}" for c in self.components)
        super().__init__(f"graph is disconnected: {len(self.components)} components: {parts}")


class GraphSyntaxError(GraphError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ResourceLimitError(LatflowError):
    """An enumeration would exceed a configured cap."""

    def __init__(self, what, size, cap):
        self.what = what
        self.size = size
        self.cap = cap
        super().__init__(f"{what}: {size} exceeds cap {cap}")


class SingularMatrixError(LatflowError):
    pass


class InfeasibleError(LatflowError):
    pass


class VerificationError(LatflowError):
    """A checked identity or invariant failed on an instance.

    ``details`` carries a JSON-friendly counterexample dump.
    """

    def __init__(self, message, details=None):
        self.details = details or {}
        super().__init__(message)
