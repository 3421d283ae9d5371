"""Exception types shared across the package.

Two budget-style conditions are deliberately distinct:

* ``SearchBudgetExceeded`` means a node cap was hit and the verdict is
  unknown (the search may be resumed).
* ``ExceedsBudget`` (in :mod:`snark_forge.covers`) is not an error at all:
  it is a definitive verdict that no cover within the requested size exists.
"""


class SnarkForgeError(Exception):
    """Base class for all package errors."""


class ParseError(SnarkForgeError):
    """Input text is not well-formed in the named format."""


class NotCubic(SnarkForgeError):
    def __init__(self, vertex: int, degree: int):
        super().__init__(f"vertex {vertex} has degree {degree}, expected 3")
        self.vertex = vertex
        self.degree = degree


class NotSimple(SnarkForgeError):
    def __init__(self, u: int, v: int, reason: str = "parallel edge"):
        super().__init__(f"edge ({u}, {v}): {reason}")
        self.edge = (u, v)


class NotConnected(SnarkForgeError):
    def __init__(self, vertex: int):
        super().__init__(f"vertex {vertex} is not reachable from vertex 0")
        self.vertex = vertex


class EmptySide(SnarkForgeError):
    """Cut side must be a nonempty proper subset of the vertex set."""


class KTooLarge(SnarkForgeError):
    """Cyclic connectivity queries are only supported for k <= girth + 1."""


class NotPerfectMatching(SnarkForgeError):
    def __init__(self, detail: str):
        super().__init__(detail)


class HostMismatch(SnarkForgeError):
    """An edge set or certificate references a different graph."""

    def __init__(self, expected: str, got: str):
        super().__init__(f"graph hash mismatch: expected {expected}, got {got}")
        self.expected = expected
        self.got = got


class EnumerationCapExceeded(SnarkForgeError):
    def __init__(self, cap: int):
        super().__init__(f"more than {cap} perfect matchings; raise the cap to enumerate")
        self.cap = cap


class NoPerfectMatchingCover(SnarkForgeError):
    def __init__(self, edge: int):
        super().__init__(f"edge {edge} lies in no perfect matching; no cover exists")
        self.edge = edge


class SearchBudgetExceeded(SnarkForgeError):
    """Node cap hit before the search finished; the verdict is unknown.

    ``progress`` optionally carries resumable state (see cyclecover).
    """

    def __init__(self, budget: int, progress=None):
        super().__init__(f"search exceeded the node budget of {budget}")
        self.budget = budget
        self.progress = progress


class NotAnEdge(SnarkForgeError):
    def __init__(self, u: int, v: int):
        super().__init__(f"({u}, {v}) is not an edge of the graph")
        self.pair = (u, v)


class NeighborsNotDistinct(SnarkForgeError):
    """The four outer neighbors of the removed edge are not pairwise distinct."""


class ProvenanceMissing(SnarkForgeError):
    """Operation needs a construction's provenance, not a bare graph."""


class InvalidCover(SnarkForgeError):
    """A certificate failed verification against its host graph."""


class DecodeContradiction(SnarkForgeError):
    """A verified 4-cover of a reduction output could not be projected.

    This cannot happen for genuine 4-covers; it signals a corrupted
    certificate or an implementation bug.
    """


class NormalizationImpossible(SnarkForgeError):
    """No color permutation normalizes the coloring (impossible for valid input)."""


class ExtensionFailed(SnarkForgeError):
    """No junction completion exists (impossible for valid inputs; signals a bug)."""


class OddBoundaryIntersection(SnarkForgeError):
    """An edge set meets a block boundary an odd number of times (invalid input)."""
