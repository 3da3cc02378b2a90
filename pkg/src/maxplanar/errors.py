"""Exception hierarchy shared by all maxplanar modules."""


class MaxplanarError(Exception):
    """Base class for every error raised by this package."""


class InvalidTriangulation(MaxplanarError):
    """A face list does not describe a maximal planar graph."""


class EulerViolation(InvalidTriangulation):
    """Edge or face counts differ from 3n-6 / 2n-4."""


class NonManifoldEdge(InvalidTriangulation):
    """An edge is not on exactly two faces, or a vertex link is not a single cycle."""


class NotPlanar(InvalidTriangulation):
    """The derived edge set fails the independent planarity test."""


class DuplicateFace(InvalidTriangulation):
    """The same face appears twice in the input."""


class VertexOutOfRange(MaxplanarError):
    """A vertex id lies outside 1..n."""


class EdgeNotPresent(MaxplanarError):
    """An operation named an edge that the graph does not contain."""


class FaceNotPresent(MaxplanarError):
    """An operation named a face that the graph does not contain."""


class DegreeNot3(MaxplanarError):
    """Vertex relocation requires a vertex of degree exactly 3."""


class TooSmall(MaxplanarError):
    """The vertex count is below the minimum for the operation."""


class SizeMismatch(MaxplanarError):
    """Two structures that must share a vertex count do not."""


class NoPath(MaxplanarError):
    """The constrained dual graph has no path between the requested faces."""


class InternalContradiction(MaxplanarError):
    """A structural guarantee was violated; indicates a bug, not bad input."""


class VertexCountOutOfRange(MaxplanarError):
    """n is outside the supported range for an exhaustive operation."""


class BudgetExceeded(MaxplanarError):
    """An enumeration or retention limit was hit before completion."""


class SearchExhausted(MaxplanarError):
    """A bounded-depth search ended without reaching its goal."""


class NoFeasible(MaxplanarError):
    """Forced edges exclude every triangulation."""


class Disconnected(MaxplanarError):
    """No spanning tree exists under the requested edge set."""


class ParseError(MaxplanarError):
    """Malformed input text; carries a 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DuplicateEdge(ParseError):
    """The same edge appears twice in an instance file."""


class IndexOutOfRange(ParseError):
    """A vertex id in an instance file lies outside 1..n."""
