"""Perfect matchings, 1-parity subgraphs, and 3-edge-colorings of cubic graphs.

Enumeration is exhaustive backtracking, branching on the lowest-indexed
unmatched vertex and trying its incident edges in index order, which makes
the output order reproducible.  The edge-coloring solvers share a small
constraint-propagation engine (domains are bitmasks over a finite value set,
adjacent edges must take compatible values).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import EnumerationCapExceeded, NotPerfectMatching, SearchBudgetExceeded
from .graphs import CubicGraph, EdgeSet, is_perfect_matching_mask

DEFAULT_ENUMERATION_CAP = 10 ** 6


@dataclass(frozen=True)
class PerfectMatching:
    """A 1-regular spanning subgraph, held as an edge set."""

    base: EdgeSet

    def validate(self, g: CubicGraph) -> None:
        self.base.require_host(g)
        if not is_perfect_matching_mask(g, self.base.mask):
            raise NotPerfectMatching("degree-1-everywhere check failed")

    @property
    def mask(self) -> int:
        return self.base.mask


@dataclass(frozen=True)
class ParitySubgraph:
    """Spanning subgraph with all degrees 1 except the listed degree-3 centers."""

    base: EdgeSet
    centers: tuple[int, ...]

    @property
    def mask(self) -> int:
        return self.base.mask

    def validate(self, g: CubicGraph) -> None:
        self.base.require_host(g)
        deg = [0] * g.n
        for e in self.base.indices:
            u, v = g.edges[e]
            deg[u] += 1
            deg[v] += 1
        centers = set(self.centers)
        for v in range(g.n):
            want = 3 if v in centers else 1
            if deg[v] != want:
                raise ValueError(f"vertex {v} has degree {deg[v]}, expected {want}")


@dataclass(frozen=True)
class ThreeColoring:
    """A proper 3-edge-coloring, stored as its three color classes."""

    classes: tuple[PerfectMatching, PerfectMatching, PerfectMatching]

    def validate(self, g: CubicGraph) -> None:
        union = 0
        for pm in self.classes:
            pm.validate(g)
            if union & pm.mask:
                raise ValueError("color classes overlap")
            union |= pm.mask
        if union != g.full_mask():
            raise ValueError("color classes do not cover the edge set")


def _mask_indices(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def _enumerate_pm_masks(g: CubicGraph, alive: int, cap: Optional[int]) -> list[int]:
    """All perfect matchings of the subgraph induced by the ``alive`` vertex mask."""
    found: list[int] = []
    adjacency = g.adjacency

    def recurse(unmatched: int, chosen: int) -> None:
        if not unmatched:
            found.append(chosen)
            if cap is not None and len(found) > cap:
                raise EnumerationCapExceeded(cap)
            return
        v = (unmatched & -unmatched).bit_length() - 1
        for w, e in adjacency[v]:
            if unmatched >> w & 1:
                recurse(unmatched & ~(1 << v) & ~(1 << w), chosen | 1 << e)

    recurse(alive, 0)
    return found


def enumerate_perfect_matchings(
    g: CubicGraph, cap: Optional[int] = DEFAULT_ENUMERATION_CAP
) -> list[PerfectMatching]:
    """Complete, duplicate-free list, ordered lexicographically by edge-index set.

    An empty list is a valid answer (graphs with bridges may have none).
    Raises EnumerationCapExceeded beyond ``cap`` matchings.
    """
    masks = _enumerate_pm_masks(g, (1 << g.n) - 1, cap)
    masks.sort(key=_mask_indices)
    return [PerfectMatching(EdgeSet(g.id, m)) for m in masks]


def enumerate_parity_subgraphs(g: CubicGraph, t: int, cap: Optional[int] = DEFAULT_ENUMERATION_CAP) -> list[ParitySubgraph]:
    """All 1-parity subgraphs whose unique degree-3 vertex is ``t``.

    Each consists of the three edges at ``t`` plus a perfect matching of the
    graph minus the closed neighborhood of ``t``.
    """
    if not 0 <= t < g.n:
        raise ValueError(f"vertex {t} out of range")
    closed = 1 << t
    t_edges = 0
    for w, e in g.adjacency[t]:
        closed |= 1 << w
        t_edges |= 1 << e
    alive = ((1 << g.n) - 1) & ~closed
    # vertices outside ``alive`` never enter the unmatched mask, so the plain
    # enumerator doubles as a subgraph enumerator
    masks = [mask | t_edges for mask in _enumerate_pm_masks(g, alive, cap)]
    masks.sort(key=_mask_indices)
    return [ParitySubgraph(EdgeSet(g.id, m), (t,)) for m in masks]


# ---------------------------------------------------------------------------
# edge-coloring CSP engine


def edge_neighbor_table(g: CubicGraph) -> list[list[int]]:
    """For each edge, the (up to four) other edges sharing one of its endpoints."""
    table: list[list[int]] = [[] for _ in range(g.m)]
    for v in range(g.n):
        e0, e1, e2 = g.incidence[v]
        table[e0] += [e1, e2]
        table[e1] += [e0, e2]
        table[e2] += [e0, e1]
    return table

def csp_color_edges(
    m: int,
    neighbor_edges: Sequence[Sequence[int]],
    compat: Sequence[int],
    domains: list[int],
    node_limit: Optional[int] = None,
) -> Optional[list[int]]:
    """Assign one value id per edge so adjacent edges take compatible values.

    ``compat[v]`` is a bitmask of value ids allowed next to value ``v``;
    ``domains[i]`` a bitmask of value ids open for edge ``i``.  Backtracking
    with unit propagation, branching on a most-constrained edge (smallest
    domain, ties by index), values in ascending id order.  Returns the value
    ids or None; deterministic first-found.
    """
    domain = list(domains)
    value = [-1] * m
    trail: list[tuple[int, int, int]] = []  # (edge, old domain, old value)
    decisions: list[tuple[int, int, int]] = []  # (edge, untried mask, trail length)
    nodes = 0

    def assign(e: int, vid: int) -> bool:
        queue = [(e, vid)]
        while queue:
            e, vid = queue.pop()
            if value[e] != -1:
                if value[e] != vid:
                    return False
                continue
            bit = 1 << vid
            if not domain[e] & bit:
                return False
            trail.append((e, domain[e], value[e]))
            domain[e] = bit
            value[e] = vid
            allowed = compat[vid]
            for f in neighbor_edges[e]:
                if value[f] != -1:
                    if not allowed >> value[f] & 1:
                        return False
                    continue
                new = domain[f] & allowed
                if new != domain[f]:
                    trail.append((f, domain[f], value[f]))
                    domain[f] = new
                    if not new:
                        return False
                    if new & (new - 1) == 0:
                        queue.append((f, new.bit_length() - 1))
        return True

    def rewind(mark: int) -> None:
        while len(trail) > mark:
            e, old_dom, old_val = trail.pop()
            domain[e] = old_dom
            value[e] = old_val

    # seed propagation for singleton starting domains
    mark0 = 0
    for e in range(m):
        if domain[e] == 0:
            return None
        if domain[e] & (domain[e] - 1) == 0 and value[e] == -1:
            if not assign(e, domain[e].bit_length() - 1):
                return None

    while True:
        best_e = -1
        best_sz = 99
        for e in range(m):
            if value[e] == -1:
                sz = domain[e].bit_count()
                if sz < best_sz:
                    best_sz = sz
                    best_e = e
                    if sz == 2:
                        break
        if best_e == -1:
            return value
        untried = domain[best_e]
        while True:
            if untried:
                vid = (untried & -untried).bit_length() - 1
                untried &= untried - 1
                nodes += 1
                if node_limit is not None and nodes > node_limit:
                    raise SearchBudgetExceeded(node_limit)
                mark = len(trail)
                if assign(best_e, vid):
                    decisions.append((best_e, untried, mark))
                    break
                rewind(mark)
            else:
                if not decisions:
                    return None
                best_e, untried, mark = decisions.pop()
                rewind(mark)


def three_edge_color(g: CubicGraph, node_limit: Optional[int] = None) -> Optional[ThreeColoring]:
    """A proper 3-edge-coloring if one exists, None otherwise.

    Decided by constraint backtracking on edges rather than via matching
    enumeration, so it stays feasible on large gadget graphs.
    """
    m = g.m
    neigh = edge_neighbor_table(g)
    compat = [0b111 & ~(1 << v) for v in range(3)]
    domains = [0b111] * m
    # fix the color of edge 0 and the order of its two siblings at one
    # endpoint: any proper coloring can be permuted into this form
    domains[0] = 0b001
    u = min(g.edges[0])
    sib = [e for e in g.incidence[u] if e != 0]
    domains[sib[0]] = 0b010
    domains[sib[1]] = 0b100
    values = csp_color_edges(m, neigh, compat, domains, node_limit)
    if values is None:
        return None
    classes = []
    for c in range(3):
        mask = 0
        for e in range(m):
            if values[e] == c:
                mask |= 1 << e
        classes.append(PerfectMatching(EdgeSet(g.id, mask)))
    coloring = ThreeColoring(tuple(classes))
    coloring.validate(g)
    return coloring
