"""Perfect-matching covers: excessive index and Berge-Fulkerson colorings.

The excessive index is computed by exact branch-and-bound set cover over the
full perfect-matching list.  Covers are multisets: a matching may repeat,
which matters when quantifying over all 4-covers.  ``ExceedsBudget`` is a
definitive verdict (the search space was exhausted), not a resource error.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import NamedTuple, Optional

from .errors import HostMismatch, InvalidCover, NoPerfectMatchingCover
from .graphs import CubicGraph, EdgeSet, is_perfect_matching_mask
from .matching import (
    DEFAULT_ENUMERATION_CAP,
    PerfectMatching,
    _mask_indices,
    csp_color_edges,
    edge_neighbor_table,
    enumerate_perfect_matchings,
)

BF_DEFAULT_NODE_LIMIT = 10 ** 7

# the fifteen 2-subsets of {1..6}, as 6-bit masks (bit i-1 = color i)
BF_PAIRS: tuple[int, ...] = tuple(
    (1 << a | 1 << b) for a in range(6) for b in range(a + 1, 6)
)
_BF_PAIR_ID = {p: i for i, p in enumerate(BF_PAIRS)}


@dataclass(frozen=True)
class MatchingCover:
    """A multiset of perfect matchings meant to cover the host's edge set."""

    host: str
    matchings: tuple[PerfectMatching, ...]


@dataclass(frozen=True)
class BFColoring:
    """Per-edge 2-subsets of {1..6}; the six color classes are the cover.

    ``assignment[e]`` is a sorted pair of colors in 1..6.
    """

    host: str
    assignment: tuple[tuple[int, int], ...]

    def classes(self) -> tuple[int, ...]:
        """Six edge masks, one per color; valid colorings make each a matching."""
        masks = [0] * 6
        for e, (a, b) in enumerate(self.assignment):
            masks[a - 1] |= 1 << e
            masks[b - 1] |= 1 << e
        return tuple(masks)


class ExceedsBudget(NamedTuple):
    """Definitive verdict: no cover of size <= budget exists."""

    budget: int


class VerifyResult(NamedTuple):
    ok: bool
    diagnostics: Optional[str]


def verify_cover(g: CubicGraph, cover: MatchingCover) -> VerifyResult:
    """Check every member is a perfect matching of g and every edge is covered."""
    if cover.host != g.id:
        raise HostMismatch(g.id, cover.host)
    union = 0
    for k, pm in enumerate(cover.matchings):
        if pm.base.host != g.id:
            raise HostMismatch(g.id, pm.base.host)
        if not is_perfect_matching_mask(g, pm.mask):
            return VerifyResult(False, f"member {k} is not a perfect matching")
        union |= pm.mask
    if union != g.full_mask():
        missing = (~union & g.full_mask())
        first = (missing & -missing).bit_length() - 1
        return VerifyResult(False, f"edge {first} is uncovered")
    return VerifyResult(True, None)


def _cover_search(
    m: int, masks: list[int], by_edge: list[tuple[int, ...]], k: int
) -> Optional[list[int]]:
    """Exact search for <= k matchings covering all m edges; returns indices.

    Branches on an uncovered edge contained in the fewest matchings.  At the
    root the chosen matching is canonically the lexicographically smallest
    cover member through the branch edge, so every lex-smaller candidate is
    excluded from the rest of that subtree.
    """
    full = (1 << m) - 1
    if k <= 0:
        return [] if full == 0 else None
    half = max(masks, default=0).bit_count() if masks else 0

    def pick_edge(covered: int) -> int:
        best_e, best_c = -1, None
        mask = ~covered & full
        while mask:
            low = mask & -mask
            e = low.bit_length() - 1
            mask ^= low
            c = len(by_edge[e])
            if best_c is None or c < best_c:
                best_e, best_c = e, c
                if c <= 1:
                    break
        return best_e

    def branch(covered: int, depth: int, chosen: list[int], excluded: frozenset[int]) -> Optional[list[int]]:
        if covered == full:
            return chosen[:]
        slots = k - depth
        if slots == 0:
            return None
        if (full & ~covered).bit_count() > slots * half:
            return None
        e = pick_edge(covered)
        for i in by_edge[e]:
            if i in excluded:
                continue
            add = masks[i]
            if covered | add == covered:
                continue  # repetition never helps coverage
            chosen.append(i)
            out = branch(covered | add, depth + 1, chosen, excluded)
            chosen.pop()
            if out is not None:
                return out
        return None

    e0 = pick_edge(0)
    cands = by_edge[e0]
    for t, i in enumerate(cands):
        # the cover's lex-least member through e0 is i: smaller ones banned below
        out = branch(masks[i], 1, [i], frozenset(cands[:t]))
        if out is not None:
            return out
    return None


def _prepare_pms(g: CubicGraph, pms: Optional[list[PerfectMatching]], cap: Optional[int]):
    if pms is None:
        pms = enumerate_perfect_matchings(g, cap)
    masks = [pm.mask for pm in pms]
    by_edge = []
    for e in range(g.m):
        row = tuple(i for i, mk in enumerate(masks) if mk >> e & 1)
        if not row:
            raise NoPerfectMatchingCover(e)
        by_edge.append(row)
    return pms, masks, by_edge


def has_cover_of_size(
    g: CubicGraph,
    k: int,
    pms: Optional[list[PerfectMatching]] = None,
    cap: Optional[int] = DEFAULT_ENUMERATION_CAP,
) -> Optional[MatchingCover]:
    """Some cover with exactly k matchings, or None (a definitive absence)."""
    if k < 1:
        raise ValueError("k must be positive")
    pms, masks, by_edge = _prepare_pms(g, pms, cap)
    chosen = _cover_search(g.m, masks, by_edge, k)
    if chosen is None:
        return None
    while len(chosen) < k:
        chosen.append(chosen[0])  # pad the multiset up to the exact size
    return MatchingCover(g.id, tuple(pms[i] for i in chosen))


def excessive_index(
    g: CubicGraph,
    budget: Optional[int] = None,
    pms: Optional[list[PerfectMatching]] = None,
    cap: Optional[int] = DEFAULT_ENUMERATION_CAP,
):
    """Minimum number of perfect matchings covering the edge set, with witness.

    Returns ``(value, MatchingCover)``.  With ``budget`` given, returns
    ``ExceedsBudget(budget)`` once every size up to the budget is exhausted.
    Raises NoPerfectMatchingCover when some edge lies in no perfect matching
    (possible for bridged graphs).
    """
    pms, masks, by_edge = _prepare_pms(g, pms, cap)
    distinct = len(set(masks))  # a cover by all distinct matchings always exists
    k = 3  # a matching covers one third of a cubic graph's edges at most
    while True:
        if budget is not None and k > budget:
            return ExceedsBudget(budget)
        chosen = _cover_search(g.m, masks, by_edge, k)
        if chosen is not None:
            return k, MatchingCover(g.id, tuple(pms[i] for i in chosen))
        k += 1
        if k > distinct:
            # cannot happen once every edge is in some matching
            raise RuntimeError("no cover found below the trivial bound")


def verify_bf_coloring(g: CubicGraph, coloring: BFColoring) -> VerifyResult:
    """Check the three pair-sets at every vertex partition {1..6}."""
    if coloring.host != g.id:
        raise HostMismatch(g.id, coloring.host)
    if len(coloring.assignment) != g.m:
        return VerifyResult(False, "assignment length differs from the edge count")
    for e, pair in enumerate(coloring.assignment):
        a, b = pair
        if not (1 <= a < b <= 6):
            return VerifyResult(False, f"edge {e}: {pair} is not a 2-subset of 1..6")
    for v in range(g.n):
        union = 0
        total = 0
        for e in g.incidence[v]:
            a, b = coloring.assignment[e]
            union |= 1 << (a - 1) | 1 << (b - 1)
            total += 2
        if union.bit_count() != total:
            return VerifyResult(False, f"vertex {v}: incident pair-sets are not disjoint")
    return VerifyResult(True, None)


def find_bf_coloring(
    g: CubicGraph, node_limit: Optional[int] = BF_DEFAULT_NODE_LIMIT
) -> Optional[BFColoring]:
    """Search for a Berge-Fulkerson coloring by constraint backtracking.

    Intended for desk-scale graphs; windmill-style composites should extend
    colorings of their parts instead.  Raises SearchBudgetExceeded when the
    node cap is hit (verdict unknown).
    """
    m = g.m
    neigh = edge_neighbor_table(g)
    compat = []
    for p in BF_PAIRS:
        allowed = 0
        for j, q in enumerate(BF_PAIRS):
            if p & q == 0:
                allowed |= 1 << j
        compat.append(allowed)
    full = (1 << 15) - 1
    domains = [full] * m
    # fix edge 0 to {1,2} and its siblings at one endpoint to {3,4} and {5,6};
    # any valid coloring can be recolored into this shape
    domains[0] = 1 << _BF_PAIR_ID[0b000011]
    u = min(g.edges[0])
    sib = [e for e in g.incidence[u] if e != 0]
    domains[sib[0]] = 1 << _BF_PAIR_ID[0b001100]
    domains[sib[1]] = 1 << _BF_PAIR_ID[0b110000]
    values = csp_color_edges(m, neigh, compat, domains, node_limit)
    if values is None:
        return None
    assignment = []
    for e in range(m):
        p = BF_PAIRS[values[e]]
        pair = tuple(i + 1 for i in range(6) if p >> i & 1)
        assignment.append(pair)
    coloring = BFColoring(g.id, tuple(assignment))
    ok, diag = verify_bf_coloring(g, coloring)
    assert ok, diag
    return coloring


def tietze_triangle_property() -> bool:
    """Whether in every 4-element multiset cover of the Tietze graph each
    triangle edge lies in exactly one member (counting multiplicity).

    Decided by exhausting all 4-multisets over the full matching list.
    """
    from .constructions import tietze, tietze_triangle_edges

    g = tietze()
    tri = tietze_triangle_edges(g)
    pms = enumerate_perfect_matchings(g)
    masks = [pm.mask for pm in pms]
    full = g.full_mask()
    for combo in combinations_with_replacement(range(len(masks)), 4):
        union = 0
        for i in combo:
            union |= masks[i]
        if union != full:
            continue
        for e in tri:
            hits = sum(1 for i in combo if masks[i] >> e & 1)
            if hits != 1:
                return False
    return True


# ---------------------------------------------------------------------------
# certificate serialization (the JSON format consumed by `snark-forge verify`)


def cover_to_json(cover: MatchingCover) -> dict:
    return {
        "graph_sha256": cover.host,
        "kind": "matching_cover",
        "matchings": [sorted(pm.base.indices) for pm in cover.matchings],
    }


def bf_to_json(coloring: BFColoring) -> dict:
    return {
        "graph_sha256": coloring.host,
        "kind": "bf_coloring",
        "assignment": [list(p) for p in coloring.assignment],
    }


def cover_from_json(obj: dict, g: CubicGraph) -> MatchingCover:
    if obj.get("kind") != "matching_cover":
        raise InvalidCover("certificate kind is not matching_cover")
    host = obj.get("graph_sha256", "")
    if host != g.id:
        raise HostMismatch(g.id, host)
    try:
        matchings = tuple(
            PerfectMatching(EdgeSet.from_indices(g, idxs)) for idxs in obj["matchings"]
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidCover(f"malformed matchings field: {exc}") from None
    return MatchingCover(g.id, matchings)


def bf_from_json(obj: dict, g: CubicGraph) -> BFColoring:
    if obj.get("kind") != "bf_coloring":
        raise InvalidCover("certificate kind is not bf_coloring")
    host = obj.get("graph_sha256", "")
    if host != g.id:
        raise HostMismatch(g.id, host)
    try:
        assignment = tuple(tuple(int(x) for x in p) for p in obj["assignment"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidCover(f"malformed assignment field: {exc}") from None
    if any(len(p) != 2 for p in assignment):
        raise InvalidCover("assignment entries must be pairs")
    return BFColoring(g.id, assignment)


def dumps_certificate(obj: dict, pretty: bool = False) -> str:
    if pretty:
        return json.dumps(obj, indent=2, sort_keys=True) + "\n"
    return json.dumps(obj, separators=(",", ":"), sort_keys=True) + "\n"
