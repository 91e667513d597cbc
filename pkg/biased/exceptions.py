# biased/exceptions.py


class BiasedGraphError(Exception):
    """Base class for every error raised by the biased package."""


class ResourceLimitError(BiasedGraphError):
    """A configured search or enumeration bound was exceeded."""

    def __init__(self, what, limit):
        self.what = what
        self.limit = limit
        super().__init__(f"{what} exceeded the configured limit of {limit}")


class InvalidGraphError(BiasedGraphError):
    pass


class UnknownEdgeError(BiasedGraphError):
    def __init__(self, edge):
        self.edge = edge
        super().__init__(f"unknown edge {edge}")


class UnbalancedLoopContractionError(BiasedGraphError):
    def __init__(self, edge):
        self.edge = edge
        super().__init__(f"edge {edge} is an unbalanced loop and cannot be contracted")


class InvalidEmbeddingError(BiasedGraphError):
    pass


class NotSpanningTreeError(BiasedGraphError):
    pass


class DisconnectedGraphError(BiasedGraphError):
    pass


class HostMismatchError(BiasedGraphError):
    pass


class WalkError(BiasedGraphError):
    """A closed walk does not fit its host graph."""


class SubwalkNotPresentError(WalkError):
    pass


class SubwalkNotPathError(WalkError):
    pass


class ArcMismatchError(WalkError):
    pass


class InvalidConstructionError(BiasedGraphError):
    pass


class UnsupportedParametersError(BiasedGraphError):
    pass


class NoShellingFoundError(BiasedGraphError):
    pass


class ThetaPropertyError(BiasedGraphError):
    def __init__(self, violation):
        self.violation = violation
        super().__init__(f"theta property violated: {violation}")


class OverlapError(BiasedGraphError):
    pass


class ParseError(BiasedGraphError):
    def __init__(self, line, message):
        self.line = line
        super().__init__(f"line {line}: {message}")
