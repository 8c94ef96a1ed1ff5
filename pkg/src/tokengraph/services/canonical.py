"""Canonical forms of small vertex-coloured graphs.

Individualisation-refinement: colours are refined by the multiset of
neighbour colours until stable, then the search branches on the first
non-singleton cell and keeps the lexicographically smallest adjacency
encoding among the discrete leaves. Twins (same colour, same neighbourhood)
are explored once per cell since swapping them is an automorphism.

The initial colour values matter: vertices with a smaller initial colour
always receive smaller canonical positions.
"""

import itertools
import logging
from typing import Dict, List, Optional, Sequence, Tuple

from ..models.graph import BipartiteBoundary, BoundaryCertificate, SimpleGraph
from ..utils.bitset import iter_bits, popcount

logger = logging.getLogger(__name__)


def _rank(keys: Sequence) -> List[int]:
    """Replace each key by its index among the sorted distinct keys."""
    order = {key: i for i, key in enumerate(sorted(set(keys)))}
    return [order[key] for key in keys]


def refine(adj: Sequence[int], colors: Sequence[int]) -> List[int]:
    """Colour refinement to the coarsest equitable partition finer than ``colors``."""
    colors = _rank(colors)
    cells = len(set(colors))
    while True:
        signatures = [
            (colors[v], tuple(sorted(colors[w] for w in iter_bits(adj[v]))))
            for v in range(len(adj))
        ]
        refined = _rank(signatures)
        refined_cells = len(set(refined))
        if refined_cells == cells:
            return refined
        colors, cells = refined, refined_cells


def _individualize(adj: Sequence[int], colors: List[int], v: int) -> List[int]:
    target = colors[v]
    split = [
        2 * c + (1 if c == target and u != v else 0)
        for u, c in enumerate(colors)
    ]
    return refine(adj, split)


def _encode(adj: Sequence[int], colors: Sequence[int]) -> Tuple[int, ...]:
    """Adjacency rows of the relabelled graph; ``colors`` must be discrete."""
    position = list(colors)
    order = sorted(range(len(adj)), key=position.__getitem__)
    rows = []
    for v in order:
        row = 0
        for w in iter_bits(adj[v]):
            row |= 1 << position[w]
        rows.append(row)
    return tuple(rows)


def _target_cell(colors: Sequence[int]) -> Optional[List[int]]:
    counts: Dict[int, int] = {}
    for c in colors:
        counts[c] = counts.get(c, 0) + 1
    multi = [c for c, size in counts.items() if size > 1]
    if not multi:
        return None
    first = min(multi)
    return [v for v, c in enumerate(colors) if c == first]


def _search(adj: Sequence[int], colors: List[int]) -> Tuple[int, ...]:
    cell = _target_cell(colors)
    if cell is None:
        return _encode(adj, colors)
    best: Optional[Tuple[int, ...]] = None
    tried: List[int] = []
    for v in cell:
        if any(_twins(adj, u, v) for u in tried):
            continue
        tried.append(v)
        leaf = _search(adj, _individualize(adj, colors, v))
        if best is None or leaf < best:
            best = leaf
    return best


def _twins(adj: Sequence[int], u: int, v: int) -> bool:
    open_u = adj[u] & ~(1 << v)
    open_v = adj[v] & ~(1 << u)
    return open_u == open_v


def canonical_form(graph: SimpleGraph, colors: Optional[Sequence[int]] = None) -> bytes:
    """Byte string equal for two graphs iff they are colour-preserving isomorphic.

    Args:
        graph: graph to canonise
        colors: initial vertex colours (defaults to a single colour)

    Returns:
        header (n, class count, class sizes in colour order) followed by the
        minimal adjacency rows
    """
    n = graph.n
    initial = list(colors) if colors is not None else [0] * n
    if len(initial) != n:
        raise ValueError("colour list length does not match vertex count")
    ranked = _rank(initial)
    sizes = [ranked.count(c) for c in range(len(set(ranked)))]
    seeded = _rank(list(zip(ranked, (popcount(graph.adj[v]) for v in range(n)))))
    rows = _search(graph.adj, refine(graph.adj, seeded)) if n else ()

    width = max(1, (n + 7) // 8)
    header = bytes([n, len(sizes)]) + bytes(sizes)
    return header + b"".join(row.to_bytes(width, "big") for row in rows)


def is_isomorphic(g1: SimpleGraph, g2: SimpleGraph) -> bool:
    if g1.n != g2.n or g1.edge_count != g2.edge_count:
        return False
    return canonical_form(g1) == canonical_form(g2)


def boundary_graph(boundary: BipartiteBoundary) -> SimpleGraph:
    return SimpleGraph.from_edges(boundary.n, boundary.cross_edges)


def certificate(boundary: BipartiteBoundary) -> BoundaryCertificate:
    """Part-preserving canonical certificate of a boundary bipartite graph.

    The occupied side is always coloured 0 and the free side 1, also when the
    two sides have the same size.
    """
    colors = [0 if boundary.left >> v & 1 else 1 for v in range(boundary.n)]
    return BoundaryCertificate(canonical_form(boundary_graph(boundary), colors))


def boundary_isomorphism(b1: BipartiteBoundary, b2: BipartiteBoundary) -> Optional[Dict[int, int]]:
    """Brute-force part-preserving isomorphism ``b1 -> b2``, or None.

    Intended as an oracle for small graphs; tries every bijection that maps
    the occupied side onto the occupied side.
    """
    if b1.n != b2.n or b1.size != b2.size:
        return None
    left1, right1 = list(iter_bits(b1.left)), list(iter_bits(b1.right))
    left2, right2 = list(iter_bits(b2.left)), list(iter_bits(b2.right))
    if len(left1) != len(left2):
        return None
    target = set(b2.cross_edges)
    for perm_left in itertools.permutations(left2):
        mapping = dict(zip(left1, perm_left))
        for perm_right in itertools.permutations(right2):
            mapping.update(zip(right1, perm_right))
            if all((mapping[a], mapping[b]) in target for a, b in b1.cross_edges):
                return dict(mapping)
    return None
