"""Immutable cubic graphs: parsing, graph6 serialization, structural invariants.

Vertices are ``0..n-1``. Edge indices are assigned in input order and then
frozen; every edge subset and certificate refers to edges by index together
with the graph's content hash, so data can never be replayed against a
different graph.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Optional

from .errors import (
    EmptySide,
    HostMismatch,
    KTooLarge,
    NotAnEdge,
    NotConnected,
    NotCubic,
    NotPerfectMatching,
    NotSimple,
    ParseError,
)

GRAPH6_HEADER = ">>graph6<<"


def _content_hash(n: int, edges: tuple[tuple[int, int], ...]) -> str:
    lines = [f"{n} {len(edges)}"]
    lines.extend(f"{u} {v}" for u, v in edges)
    return hashlib.sha256("\n".join(lines).encode("ascii")).hexdigest()


@dataclass(frozen=True)
class CubicGraph:
    """A simple connected cubic graph with frozen vertex and edge order.

    ``incidence[v]`` lists the three edge indices at ``v`` in increasing
    order.  ``id`` is the SHA-256 of the canonical edge list (``"n m"``
    followed by one ``"u v"`` line per edge, endpoints sorted, edges in
    index order).
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    incidence: tuple[tuple[int, int, int], ...]
    id: str

    @staticmethod
    def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> "CubicGraph":
        norm: list[tuple[int, int]] = []
        seen: set[tuple[int, int]] = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise NotSimple(u, v, "loop")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise NotSimple(*e)
            seen.add(e)
            norm.append(e)
        inc: list[list[int]] = [[] for _ in range(n)]
        for i, (u, v) in enumerate(norm):
            inc[u].append(i)
            inc[v].append(i)
        for v in range(n):
            if len(inc[v]) != 3:
                raise NotCubic(v, len(inc[v]))
        edges_t = tuple(norm)
        incidence = tuple(tuple(sorted(s)) for s in inc)
        g = CubicGraph(n, edges_t, incidence, _content_hash(n, edges_t))
        _check_connected(g)
        return g

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per vertex: ``(neighbor, edge index)`` pairs, ordered by edge index."""
        out = []
        for v in range(self.n):
            row = []
            for e in self.incidence[v]:
                u, w = self.edges[e]
                row.append((w if u == v else u, e))
            out.append(tuple(row))
        return tuple(out)

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        return {e: i for i, e in enumerate(self.edges)}

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(w for w, _ in self.adjacency[v])

    def find_edge(self, u: int, v: int) -> int:
        e = (u, v) if u < v else (v, u)
        idx = self.edge_index.get(e)
        if idx is None:
            raise NotAnEdge(u, v)
        return idx

    def other_end(self, e: int, v: int) -> int:
        u, w = self.edges[e]
        return w if u == v else u

    def full_mask(self) -> int:
        return (1 << self.m) - 1


def _check_connected(g: CubicGraph) -> None:
    seen = bytearray(g.n)
    stack = [0]
    seen[0] = 1
    count = 1
    while stack:
        v = stack.pop()
        for w, _ in g.adjacency[v]:
            if not seen[w]:
                seen[w] = 1
                count += 1
                stack.append(w)
    if count != g.n:
        bad = next(v for v in range(g.n) if not seen[v])
        raise NotConnected(bad)


@dataclass(frozen=True)
class EdgeSet:
    """A subset of a host graph's edges, stored as a bit mask over indices."""

    host: str
    mask: int

    @staticmethod
    def from_indices(g: CubicGraph, indices: Iterable[int]) -> "EdgeSet":
        mask = 0
        for i in indices:
            if not 0 <= i < g.m:
                raise ValueError(f"edge index {i} out of range")
            mask |= 1 << i
        return EdgeSet(g.id, mask)

    @cached_property
    def indices(self) -> tuple[int, ...]:
        out = []
        mask = self.mask
        while mask:
            low = mask & -mask
            out.append(low.bit_length() - 1)
            mask ^= low
        return tuple(out)

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, e: int) -> bool:
        return bool(self.mask >> e & 1)

    def require_host(self, g: CubicGraph) -> None:
        if self.host != g.id:
            raise HostMismatch(g.id, self.host)


@dataclass(frozen=True)
class Cut:
    """A vertex subset together with its boundary edge set."""

    side: tuple[int, ...]
    boundary: EdgeSet


class CyclicityVerdict(NamedTuple):
    ok: bool
    witness: Optional[Cut]


# ---------------------------------------------------------------------------
# parsing and serialization


def parse_graph(text: str, fmt: str = "graph6") -> CubicGraph:
    """Parse a cubic graph from ``graph6`` or ``edge-list`` text."""
    if fmt == "graph6":
        n, edges = _decode_graph6(text)
    elif fmt == "edge-list":
        n, edges = _decode_edge_list(text)
    else:
        raise ParseError(f"unknown format {fmt!r}")
    return CubicGraph.from_edges(n, edges)


def _decode_edge_list(text: str):
    edges = []
    top = -1
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"line {lineno}: expected integers, got {line!r}") from None
        if u < 0 or v < 0:
            raise ParseError(f"line {lineno}: negative vertex id")
        edges.append((u, v))
        top = max(top, u, v)
    if not edges:
        raise ParseError("empty edge list")
    return top + 1, edges


def _decode_graph6(text: str):
    s = text.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER):].strip()
    if not s:
        raise ParseError("empty graph6 string")
    data = []
    for ch in s:
        o = ord(ch)
        if not 63 <= o <= 126:
            raise ParseError(f"invalid graph6 character {ch!r}")
        data.append(o - 63)
    if data[0] < 63:
        n = data[0]
        body = data[1:]
    else:
        if len(data) < 4:
            raise ParseError("truncated graph6 order")
        if data[1] == 63:
            raise ParseError("graph6 orders above 258047 are not supported")
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        body = data[4:]
    nbits = n * (n - 1) // 2
    if len(body) != (nbits + 5) // 6:
        raise ParseError("graph6 body length does not match the order")
    bits = []
    for x in body:
        for k in range(5, -1, -1):
            bits.append(x >> k & 1)
    edges = []
    pos = 0
    for j in range(1, n):
        for i in range(j):
            if bits[pos]:
                edges.append((i, j))
            pos += 1
    return n, edges


def to_graph6(g: CubicGraph) -> str:
    """Encode in the standard graph6 format (bit-exact)."""
    n = g.n
    if n <= 62:
        head = [n + 63]
    elif n <= 258047:
        head = [126, (n >> 12) + 63, (n >> 6 & 63) + 63, (n & 63) + 63]
    else:
        raise ValueError("graph too large for the supported graph6 range")
    adj = [[False] * n for _ in range(n)]
    for u, v in g.edges:
        adj[u][v] = adj[v][u] = True
    bits = []
    for j in range(1, n):
        for i in range(j):
            bits.append(1 if adj[i][j] else 0)
    while len(bits) % 6:
        bits.append(0)
    out = head[:]
    for k in range(0, len(bits), 6):
        x = 0
        for b in bits[k:k + 6]:
            x = x << 1 | b
        out.append(x + 63)
    return "".join(chr(x) for x in out)


def to_edge_list(g: CubicGraph) -> str:
    return "\n".join(f"{u} {v}" for u, v in g.edges) + "\n"


# ---------------------------------------------------------------------------
# structural invariants


def girth(g: CubicGraph) -> int:
    """Length of a shortest cycle (every cubic graph has one)."""
    best = g.n + 1
    for root in range(g.n):
        dist = [-1] * g.n
        parent_edge = [-1] * g.n
        dist[root] = 0
        frontier = [root]
        # scanning level d can only close cycles of length >= 2d
        while frontier and 2 * dist[frontier[0]] < best:
            nxt = []
            for v in frontier:
                for w, e in g.adjacency[v]:
                    if e == parent_edge[v]:
                        continue
                    if dist[w] == -1:
                        dist[w] = dist[v] + 1
                        parent_edge[w] = e
                        nxt.append(w)
                    else:
                        # non-tree edge closes a cycle through the BFS tree
                        best = min(best, dist[v] + dist[w] + 1)
            frontier = nxt
    return best


def bridges(g: CubicGraph) -> EdgeSet:
    """All cut edges; empty iff the graph is bridgeless."""
    disc = [-1] * g.n
    low = [0] * g.n
    mask = 0
    timer = 0
    # iterative low-link DFS; reduction outputs get deep enough to avoid recursion
    stack: list[tuple[int, int, int]] = [(0, -1, 0)]  # (vertex, entry edge, slot)
    while stack:
        v, pe, slot = stack.pop()
        if slot == 0:
            disc[v] = low[v] = timer
            timer += 1
        if slot < 3:
            stack.append((v, pe, slot + 1))
            e = g.incidence[v][slot]
            if e == pe:
                continue
            w = g.other_end(e, v)
            if disc[w] == -1:
                stack.append((w, e, 0))
            else:
                low[v] = min(low[v], disc[w])
        else:
            if pe != -1:
                u = g.other_end(pe, v)
                low[u] = min(low[u], low[v])
                if low[v] > disc[u]:
                    mask |= 1 << pe
    return EdgeSet(g.id, mask)


def cut_boundary(g: CubicGraph, side: Iterable[int]) -> Cut:
    """The cut determined by a nonempty proper vertex subset."""
    side_t = tuple(sorted(set(side)))
    if not side_t or len(side_t) >= g.n:
        raise EmptySide("cut side must be a nonempty proper subset of the vertices")
    inside = bytearray(g.n)
    for v in side_t:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range")
        inside[v] = 1
    mask = 0
    for i, (u, v) in enumerate(g.edges):
        if inside[u] != inside[v]:
            mask |= 1 << i
    return Cut(side_t, EdgeSet(g.id, mask))


def _cycle_component_count(g: CubicGraph, removed_mask: int) -> int:
    """Number of connected components of g minus the removed edges that contain a cycle."""
    seen = bytearray(g.n)
    count = 0
    for start in range(g.n):
        if seen[start]:
            continue
        verts = 0
        edges2 = 0  # twice the edge count of the component
        stack = [start]
        seen[start] = 1
        while stack:
            v = stack.pop()
            verts += 1
            for w, e in g.adjacency[v]:
                if removed_mask >> e & 1:
                    continue
                edges2 += 1
                if not seen[w]:
                    seen[w] = 1
                    stack.append(w)
        if edges2 // 2 >= verts:  # connected with a cycle iff m >= n
            count += 1
    return count


def cyclically_edge_connected_at_least(g: CubicGraph, k: int) -> CyclicityVerdict:
    """Decide whether every edge cut smaller than ``k`` leaves a cycle on at most one side.

    Exhaustively enumerates edge subsets of size < k in lexicographic order
    (prefixes first), so a returned witness is the lexicographically smallest
    violating subset.  Only ``k <= girth + 1`` is accepted; beyond that the
    answer is governed by the girth itself.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if k > girth(g) + 1:
        raise KTooLarge(f"k={k} exceeds girth+1")

    chosen: list[int] = []

    def descend(start: int, mask: int) -> Optional[int]:
        for e in range(start, g.m):
            new_mask = mask | 1 << e
            chosen.append(e)
            if _cycle_component_count(g, new_mask) >= 2:
                return new_mask
            if len(chosen) < k - 1:
                found = descend(e + 1, new_mask)
                if found is not None:
                    return found
            chosen.pop()
        return None

    bad = descend(0, 0) if k > 1 else None
    if bad is None:
        return CyclicityVerdict(True, None)
    # rebuild the two-sided witness cut from the violating subset
    seen = bytearray(g.n)
    comps = []
    for start in range(g.n):
        if seen[start]:
            continue
        comp = [start]
        seen[start] = 1
        stack = [start]
        edges2 = 0
        while stack:
            v = stack.pop()
            for w, e in g.adjacency[v]:
                if bad >> e & 1:
                    continue
                edges2 += 1
                if not seen[w]:
                    seen[w] = 1
                    comp.append(w)
                    stack.append(w)
        comps.append((comp, edges2 // 2 >= len(comp)))
    cyc = [c for c, has in comps if has]
    witness = cut_boundary(g, cyc[0])
    return CyclicityVerdict(False, witness)


def is_perfect_matching_mask(g: CubicGraph, mask: int) -> bool:
    deg = [0] * g.n
    for e in range(g.m):
        if mask >> e & 1:
            u, v = g.edges[e]
            deg[u] += 1
            deg[v] += 1
    return all(d == 1 for d in deg)


def check_cut_parity(g: CubicGraph, matching: EdgeSet, cut: Cut) -> bool:
    """Parity oracle: |X|, the cut size, and the matched boundary share one parity.

    Holds for every perfect matching and every cut of a cubic graph, so this
    must return True on all valid inputs; it exists as a property-test oracle.
    """
    matching.require_host(g)
    cut.boundary.require_host(g)
    if not is_perfect_matching_mask(g, matching.mask):
        raise NotPerfectMatching("edge set is not a perfect matching of the host")
    x = len(cut.side) & 1
    c = cut.boundary.size & 1
    mc = (matching.mask & cut.boundary.mask).bit_count() & 1
    return x == c == mc
