"""Exception hierarchy shared by every flowmax module."""


class FlowmaxError(Exception):
    """Base class for all errors raised by flowmax."""


class GraphError(FlowmaxError, ValueError):
    """Invalid graph construction input (self-loop, bad endpoint, ...)."""


class DimensionError(FlowmaxError, ValueError):
    """A load vector or vertex index does not fit the graph."""


class InfeasibleLoadError(FlowmaxError, ValueError):
    """Loads are negative or do not sum to the declared total."""


class WrongClassError(FlowmaxError, ValueError):
    """The graph does not belong to the class an operation handles."""


class NoEdgeError(FlowmaxError, ValueError):
    """The operation needs at least one edge."""


class InvalidCertificateError(FlowmaxError, ValueError):
    """A supplied clique is not a clique of the graph."""


class InvalidStateError(FlowmaxError, ValueError):
    """A load distribution violates a transformation's precondition."""


class SizeGuardError(FlowmaxError, ValueError):
    """An exhaustive computation would exceed its size guard."""


class NumericError(FlowmaxError, ValueError):
    """Non-finite numeric input."""


class StationaryZeroError(FlowmaxError, ArithmeticError):
    """Replicator update undefined because no edge carries load."""


class DegenerateGraphError(FlowmaxError, ValueError):
    """The graph has no edges, so the solver has nothing to do."""


class ExtractionError(FlowmaxError, ValueError):
    """No clique could be read off a load vector."""


class ParseError(FlowmaxError, ValueError):
    """Malformed graph or load file."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
