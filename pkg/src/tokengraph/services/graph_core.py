"""Underlying-graph operations and exact small-scale oracles.

Everything here is a pure function of an immutable :class:`SimpleGraph`.
Subsets are bitmasks; see :mod:`tokengraph.utils.bitset`.
"""

import logging
from math import comb
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import networkx as nx
from networkx.algorithms.flow import edmonds_karp

from ..exceptions import CapExceededError, GraphFormatError, PreconditionError
from ..models.graph import MAX_VERTICES, BipartiteBoundary, BoundaryCertificate, SimpleGraph
from ..models.report import StructureProfile
from ..utils import adjacency as adjacency_utils
from ..utils.adjacency import Adjacency
from ..utils.bitset import iter_bits, iter_k_subsets, list_to_bits, popcount
from . import canonical

logger = logging.getLogger(__name__)

DEFAULT_AUTOMORPHISM_CAP = 10
DEFAULT_SUBSET_CAP = 200_000


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------

def _cycle(n: int) -> SimpleGraph:
    if n < 3:
        raise PreconditionError(f"cycle needs n >= 3, got {n}")
    return SimpleGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], f"cycle:{n}")


def _path(n: int) -> SimpleGraph:
    if n < 1:
        raise PreconditionError(f"path needs n >= 1, got {n}")
    return SimpleGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)], f"path:{n}")


def _star(beams: int) -> SimpleGraph:
    """Centre 0 joined to leaves 1..beams."""
    if beams < 1:
        raise PreconditionError(f"star needs beams >= 1, got {beams}")
    return SimpleGraph.from_edges(beams + 1, [(0, i) for i in range(1, beams + 1)], f"star:{beams}")


def _complete(n: int) -> SimpleGraph:
    if n < 1:
        raise PreconditionError(f"complete needs n >= 1, got {n}")
    return SimpleGraph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)], f"complete:{n}")


def _empty(n: int) -> SimpleGraph:
    if n < 0:
        raise PreconditionError(f"empty needs n >= 0, got {n}")
    return SimpleGraph(n, (0,) * n, f"empty:{n}")


def _circulant(n: int, *jumps: int) -> SimpleGraph:
    if n < 2:
        raise PreconditionError(f"circulant needs n >= 2, got {n}")
    if not jumps:
        raise PreconditionError("circulant needs at least one jump")
    edges = set()
    for j in jumps:
        if j % n == 0:
            raise PreconditionError(f"jump {j} is zero mod {n}")
        for i in range(n):
            u, v = i, (i + j) % n
            edges.add((min(u, v), max(u, v)))
    name = f"circulant:{n}," + ",".join(map(str, jumps))
    return SimpleGraph.from_edges(n, sorted(edges), name)


def _cocktail_party(m: int) -> SimpleGraph:
    """K_{2m} minus the perfect matching {2i, 2i+1}."""
    if m < 1:
        raise PreconditionError(f"cocktail_party needs m >= 1, got {m}")
    n = 2 * m
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if u // 2 != v // 2]
    return SimpleGraph.from_edges(n, edges, f"cocktail_party:{m}")


def _petersen() -> SimpleGraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return SimpleGraph.from_edges(10, outer + inner + spokes, "petersen")


def _cube(dim: int = 3) -> SimpleGraph:
    if not 1 <= dim <= 6:
        raise PreconditionError(f"cube dimension must be in 1..6, got {dim}")
    n = 1 << dim
    edges = [(v, v ^ (1 << b)) for v in range(n) for b in range(dim) if v < v ^ (1 << b)]
    return SimpleGraph.from_edges(n, edges, f"cube:{dim}")


def _bridged_triangles() -> SimpleGraph:
    """Cubic graph on 8 vertices: triangles {0,1,2} and {3,4,5} plus 6-7.

    Independence number 3, no two triangles share an edge; its degree sets
    for k=3 and k=4 are disjoint.
    """
    edges = [
        (0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5),
        (0, 3), (1, 6), (4, 6), (2, 7), (5, 7), (6, 7),
    ]
    return SimpleGraph.from_edges(8, edges, "cubic8")


GENERATORS: Dict[str, Callable[..., SimpleGraph]] = {
    "cycle": _cycle,
    "path": _path,
    "star": _star,
    "complete": _complete,
    "empty": _empty,
    "circulant": _circulant,
    "cocktail_party": _cocktail_party,
    "petersen": _petersen,
    "cube": _cube,
    "cubic8": _bridged_triangles,
}

_ARITY = {
    "cycle": (1, 1), "path": (1, 1), "star": (1, 1), "complete": (1, 1),
    "empty": (1, 1), "circulant": (2, None), "cocktail_party": (1, 1),
    "petersen": (0, 0), "cube": (0, 1), "cubic8": (0, 0),
}

_SIZE = {
    "cycle": lambda p: p[0],
    "path": lambda p: p[0],
    "star": lambda p: p[0] + 1,
    "complete": lambda p: p[0],
    "empty": lambda p: p[0],
    "circulant": lambda p: p[0],
    "cocktail_party": lambda p: 2 * p[0],
    "petersen": lambda p: 10,
    "cube": lambda p: 1 << (p[0] if p else 3),
    "cubic8": lambda p: 8,
}


def generate(kind: str, params: Sequence[int] = ()) -> SimpleGraph:
    """Build a named graph family member.

    Args:
        kind: generator name, one of :data:`GENERATORS`
        params: integer parameters, e.g. ``[5]`` for ``cycle`` or ``[8, 1, 3]`` for a circulant

    Returns:
        the generated graph
    """
    if kind not in GENERATORS:
        raise PreconditionError(f"unknown generator {kind!r}; choose from {', '.join(sorted(GENERATORS))}")
    params = [int(p) for p in params]
    low, high = _ARITY[kind]
    if len(params) < low or (high is not None and len(params) > high):
        raise PreconditionError(f"{kind} takes {low}..{high if high is not None else 'any'} parameters, got {len(params)}")
    if kind == "cube" and params and not 1 <= params[0] <= 6:
        raise PreconditionError(f"cube dimension must be in 1..6, got {params[0]}")
    size = _SIZE[kind](params)
    if size > MAX_VERTICES:
        raise PreconditionError(f"{kind} would have {size} vertices, limit is {MAX_VERTICES}")
    return GENERATORS[kind](*params)


def parse_spec(spec: str) -> Tuple[str, List[int]]:
    """Split a generator spec such as ``circulant:8,1,3`` into name and parameters."""
    name, _, rest = spec.strip().partition(":")
    if not name:
        raise GraphFormatError(f"empty generator spec {spec!r}")
    try:
        params = [int(p) for p in rest.split(",")] if rest.strip() else []
    except ValueError:
        raise GraphFormatError(f"generator parameters must be integers in {spec!r}") from None
    return name, params


def from_spec(spec: str) -> SimpleGraph:
    name, params = parse_spec(spec)
    graph = generate(name, params)
    return SimpleGraph(graph.n, graph.adj, spec.strip())


# ---------------------------------------------------------------------------
# subgraphs
# ---------------------------------------------------------------------------

def _check_mask(graph: SimpleGraph, mask: int) -> None:
    if mask < 0 or mask & ~graph.vertex_mask:
        raise PreconditionError(f"subset {mask:#x} has bits outside 0..{graph.n - 1}")


def complement(graph: SimpleGraph) -> SimpleGraph:
    universe = graph.vertex_mask
    adj = tuple(universe & ~nb & ~(1 << v) for v, nb in enumerate(graph.adj))
    return SimpleGraph(graph.n, adj, f"complement({graph.name})" if graph.name else "")


def induced_subgraph(graph: SimpleGraph, mask: int) -> SimpleGraph:
    """Subgraph on ``mask`` relabelled 0..|mask|-1 in ascending original order."""
    _check_mask(graph, mask)
    members = list(iter_bits(mask))
    relabel = {v: i for i, v in enumerate(members)}
    edges = [
        (relabel[u], relabel[w])
        for u in members
        for w in iter_bits(graph.adj[u] & mask)
        if w > u
    ]
    return SimpleGraph.from_edges(len(members), edges)


def boundary_bipartite(graph: SimpleGraph, mask: int) -> BipartiteBoundary:
    _check_mask(graph, mask)
    if mask == 0 or mask == graph.vertex_mask:
        raise PreconditionError("boundary needs a non-empty proper subset")
    outside = graph.vertex_mask & ~mask
    cross = tuple(
        (v, w) for v in iter_bits(mask) for w in iter_bits(graph.adj[v] & outside)
    )
    return BipartiteBoundary(left=mask, right=outside, cross_edges=cross, n=graph.n)


def certificate(boundary: BipartiteBoundary) -> BoundaryCertificate:
    return canonical.certificate(boundary)


def outer_boundary(graph: SimpleGraph, mask: int) -> int:
    """Vertices outside ``mask`` adjacent to some vertex of ``mask``."""
    reach = 0
    for v in iter_bits(mask):
        reach |= graph.adj[v]
    return reach & ~mask


# ---------------------------------------------------------------------------
# traversal
# ---------------------------------------------------------------------------

def adjacency_lists(graph: SimpleGraph) -> List[List[int]]:
    return [graph.neighbors(v) for v in range(graph.n)]


def bfs_distances(graph: SimpleGraph, source: int) -> List[Optional[int]]:
    dist = adjacency_utils.distances(adjacency_lists(graph), source)
    return [dist.get(v) for v in range(graph.n)]


def components(graph: SimpleGraph) -> List[int]:
    """Connected components as vertex masks, ordered by smallest member."""
    return [list_to_bits(part) for part in adjacency_utils.components(adjacency_lists(graph))]


def is_connected(graph: SimpleGraph) -> bool:
    return adjacency_utils.is_connected(adjacency_lists(graph))


def is_bipartite(graph: SimpleGraph) -> bool:
    return adjacency_utils.is_bipartite(adjacency_lists(graph))


def diameter(graph: SimpleGraph) -> Optional[int]:
    return adjacency_utils.diameter(adjacency_lists(graph))


def star_centre(graph: SimpleGraph) -> Optional[int]:
    """Centre of a star K_{1,n-1}, or None. K2 reports vertex 0."""
    n = graph.n
    if n < 2 or graph.edge_count != n - 1:
        return None
    return next((v for v in range(n) if graph.degrees[v] == n - 1), None)


def is_cycle(graph: SimpleGraph) -> bool:
    return graph.n >= 3 and graph.regular_degree == 2 and is_connected(graph)


def is_cocktail_party(graph: SimpleGraph) -> bool:
    """Complete graph minus a perfect matching, i.e. (n-2)-regular on even n >= 4."""
    return graph.n >= 4 and graph.n % 2 == 0 and graph.regular_degree == graph.n - 2


def structure_profile(graph: SimpleGraph) -> StructureProfile:
    connected = is_connected(graph)
    return StructureProfile(
        connected=connected,
        bipartite=is_bipartite(graph),
        regular_degree=graph.regular_degree,
        diameter=diameter(graph) if connected else None,
    )


def odd_girth(graph: SimpleGraph) -> Optional[int]:
    """Length of a shortest odd cycle, None for bipartite graphs.

    From every root, an edge joining two vertices at equal BFS depth ``d``
    closes an odd walk of length ``2d + 1``; the minimum over all roots is
    the odd girth.
    """
    best: Optional[int] = None
    for root in range(graph.n):
        dist = bfs_distances(graph, root)
        for u, w in graph.edges():
            if dist[u] is not None and dist[u] == dist[w]:
                length = 2 * dist[u] + 1
                if best is None or length < best:
                    best = length
    return best


# ---------------------------------------------------------------------------
# counting oracles
# ---------------------------------------------------------------------------

def count_cliques(graph: SimpleGraph, c: int) -> int:
    """Number of c-vertex complete subgraphs, by ordered branch enumeration."""
    if not 1 <= c <= graph.n:
        raise PreconditionError(f"clique size {c} outside 1..{graph.n}")
    higher = [nb & ~((1 << (v + 1)) - 1) for v, nb in enumerate(graph.adj)]

    def extend(candidates: int, missing: int) -> int:
        if missing == 0:
            return 1
        if popcount(candidates) < missing:
            return 0
        total = 0
        for v in iter_bits(candidates):
            total += extend(candidates & higher[v], missing - 1)
        return total

    return extend(graph.vertex_mask, c)


def iter_cliques(graph: SimpleGraph, c: int):
    """Yield every c-clique as a vertex mask, in lexicographic member order."""
    if not 1 <= c <= graph.n:
        raise PreconditionError(f"clique size {c} outside 1..{graph.n}")
    higher = [nb & ~((1 << (v + 1)) - 1) for v, nb in enumerate(graph.adj)]

    def extend(chosen: int, candidates: int, missing: int):
        if missing == 0:
            yield chosen
            return
        for v in iter_bits(candidates):
            yield from extend(chosen | 1 << v, candidates & higher[v], missing - 1)

    yield from extend(0, graph.vertex_mask, c)


def adjacency_vertex_connectivity(adjacency: Adjacency) -> int:
    """Vertex connectivity of a connected graph given as adjacency lists.

    networkx picks the Esfahanian-Hakimi pairs and reuses one residual
    network across the Edmonds-Karp runs. Complete graphs give ``n - 1``.
    """
    n = len(adjacency)
    if n < 2:
        raise PreconditionError("vertex connectivity needs at least 2 vertices")
    graph = adjacency_utils.to_graph(adjacency)
    if not nx.is_connected(graph):
        raise PreconditionError("vertex connectivity needs a connected graph")
    return nx.node_connectivity(graph, flow_func=edmonds_karp)


def vertex_connectivity(graph: SimpleGraph) -> int:
    """Minimum vertex cut size of the underlying graph."""
    return adjacency_vertex_connectivity(adjacency_lists(graph))


def automorphisms(
    graph: SimpleGraph,
    cap: int = DEFAULT_AUTOMORPHISM_CAP,
    limit: Optional[int] = None,
) -> List[Tuple[int, ...]]:
    """All automorphisms as tuples ``perm`` with ``perm[v]`` the image of ``v``.

    Backtracking assigns images in vertex order, pruning by degree and by
    adjacency to already-mapped vertices. Output is lexicographically sorted,
    so the identity comes first.
    """
    n = graph.n
    if n > cap:
        raise CapExceededError("automorphism search vertex count", n, cap)
    degrees = graph.degrees
    image = [-1] * n
    found: List[Tuple[int, ...]] = []

    def assign(v: int, used: int) -> None:
        if v == n:
            found.append(tuple(image))
            if limit is not None and len(found) > limit:
                raise CapExceededError("automorphism group order", len(found), limit)
            return
        for w in range(n):
            if used >> w & 1 or degrees[w] != degrees[v]:
                continue
            if any(graph.has_edge(u, v) != graph.has_edge(image[u], w) for u in range(v)):
                continue
            image[v] = w
            assign(v + 1, used | 1 << w)
        image[v] = -1

    assign(0, 0)
    return found


def is_automorphism(graph: SimpleGraph, perm: Sequence[int]) -> bool:
    if sorted(perm) != list(range(graph.n)):
        return False
    return all(graph.has_edge(perm[u], perm[w]) for u, w in graph.edges())


def extreme_k_subgraph(
    graph: SimpleGraph,
    k: int,
    mode: str = "densest",
    cap: int = DEFAULT_SUBSET_CAP,
) -> Tuple[int, int]:
    """Exhaustive densest / least-dense k-vertex induced subgraph.

    Returns:
        (witness mask, induced edge count); ties go to the lowest-ranked subset
    """
    if mode not in ("densest", "least_dense"):
        raise PreconditionError(f"mode must be 'densest' or 'least_dense', got {mode!r}")
    if not 1 <= k <= graph.n:
        raise PreconditionError(f"k={k} outside 1..{graph.n}")
    total = comb(graph.n, k)
    if total > cap:
        raise CapExceededError("k-subset scan", total, cap)
    better = (lambda a, b: a > b) if mode == "densest" else (lambda a, b: a < b)
    best_mask, best_edges = 0, None
    for mask in iter_k_subsets(graph.n, k):
        edges = graph.induced_edge_count(mask)
        if best_edges is None or better(edges, best_edges):
            best_mask, best_edges = mask, edges
    return best_mask, best_edges


def all_extreme_k_subgraphs(graph: SimpleGraph, k: int, mode: str = "densest",
                            cap: int = DEFAULT_SUBSET_CAP) -> List[int]:
    """Every k-subset attaining the extreme induced edge count."""
    _, target = extreme_k_subgraph(graph, k, mode, cap)
    return [m for m in iter_k_subsets(graph.n, k) if graph.induced_edge_count(m) == target]
