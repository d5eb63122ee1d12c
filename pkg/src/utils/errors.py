"""Exception hierarchy; every class knows the CLI exit code it maps to."""


class Gamma2Error(Exception):
    exit_code = 1


class GraphInputError(Gamma2Error):
    """Input that does not describe a valid graph or family."""

    exit_code = 2


class MalformedLineError(GraphInputError):
    def __init__(self, line_no: int, text: str, reason: str = "expected two integers"):
        self.line_no = line_no
        super().__init__(f"line {line_no}: malformed ({reason}): {text!r}")


class IndexRangeError(GraphInputError):
    def __init__(self, line_no: int, u: int, v: int, n: int):
        self.line_no = line_no
        super().__init__(f"line {line_no}: edge ({u}, {v}) out of range for n={n}")


class SelfLoopError(GraphInputError):
    def __init__(self, vertex: int, line_no: int = None):
        where = f"line {line_no}: " if line_no is not None else ""
        super().__init__(f"{where}self-loop at vertex {vertex}")


class DuplicateEdgeError(GraphInputError):
    def __init__(self, u: int, v: int, line_no: int = None):
        where = f"line {line_no}: " if line_no is not None else ""
        super().__init__(f"{where}duplicate edge ({u}, {v})")


class IsolatedVertexError(GraphInputError):
    def __init__(self, vertex: int):
        self.vertex = vertex
        super().__init__(f"vertex {vertex} is isolated (every vertex needs degree >= 1)")


class AsymmetricAdjacencyError(GraphInputError):
    def __init__(self, u: int, v: int):
        super().__init__(f"adjacency not symmetric: {v} in adj[{u}] but {u} not in adj[{v}]")


class GroupSpecError(GraphInputError):
    pass


class FamilyParameterError(GraphInputError):
    pass


class ResourceCapError(Gamma2Error):
    exit_code = 3


class PreconditionError(Gamma2Error):
    """A hypothesis the requested computation relies on does not hold."""


class NumericalError(Gamma2Error):
    pass


class AssemblyError(NumericalError):
    """Internal consistency failure, i.e. a bug rather than bad input."""


class UsageError(Gamma2Error):
    """Bad command-line arguments."""

    exit_code = 2
