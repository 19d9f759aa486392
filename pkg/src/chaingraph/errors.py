"""Exception hierarchy shared by all modules."""


class ChainGraphError(Exception):
    """Base class for every error raised by this package."""


class GraphFormatError(ChainGraphError, ValueError):
    """Malformed input file: graph, chain, model or DagSpec."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvalidGraphError(ChainGraphError, ValueError):
    """The graph violates a structural precondition (simplicity, acyclicity, graph class)."""


class UnknownNodeError(ChainGraphError, KeyError):
    def __init__(self, nodes):
        self.nodes = tuple(sorted(nodes))
        super().__init__(f"unknown node(s): {', '.join(self.nodes)}")

    def __str__(self):
        return self.args[0]


class CapExceededError(ChainGraphError, ValueError):
    """Exhaustive enumeration requested over more nodes than the configured cap."""


class ConsensusError(ChainGraphError):
    """Base class for failures while constructing a consensus chain graph."""


class UnsatisfiableTemplateError(ConsensusError):
    """Not even the full candidate set satisfies the required separation."""


class NonGraphoidError(ConsensusError):
    """The model behaves in a way no graphoid can (disagreeing minima, asymmetric boundaries)."""


class ContractViolation(ChainGraphError):
    """An internal guarantee failed; carries an optional witness object."""

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)
