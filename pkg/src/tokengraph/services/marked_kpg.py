"""Token graphs of distinguishable particles.

Vertices are ordered k-tuples of distinct vertex labels; one particle at a
time moves along an edge onto a free vertex.
"""

import itertools
import logging
from math import comb, factorial, perm
from typing import Dict, List

from ..exceptions import CapExceededError, PreconditionError
from ..models.graph import SimpleGraph
from ..models.marked import MarkedConfig, MarkedTokenGraph
from ..models.report import CheckResult
from ..utils import adjacency as adjacency_utils
from ..utils.bitset import popcount
from . import kpg

logger = logging.getLogger(__name__)


def marked_vertex_count(n: int, k: int) -> int:
    """Falling factorial n!/(n-k)!, zero when k > n."""
    if n < 0 or k < 0:
        raise PreconditionError(f"need n, k >= 0, got n={n}, k={k}")
    if k > n:
        return 0
    return perm(n, k)


def build_marked(graph: SimpleGraph, k: int, max_configs: int = kpg.DEFAULT_MAX_CONFIGS) -> MarkedTokenGraph:
    """Build the marked k-particle graph; k = n is edgeless and k > n empty."""
    if k < 1:
        raise PreconditionError(f"k must be >= 1, got {k}")
    total = marked_vertex_count(graph.n, k)
    if total > max_configs:
        raise CapExceededError(f"marked token graph {graph.n}!/({graph.n}-{k})!", total, max_configs)

    configs = tuple(itertools.permutations(range(graph.n), k)) if k <= graph.n else ()
    index = {c: i for i, c in enumerate(configs)}
    adjacency = []
    for config in configs:
        occupied = 0
        for v in config:
            occupied |= 1 << v
        nbrs = []
        for slot, v in enumerate(config):
            free = graph.adj[v] & ~occupied
            for w in graph.neighbors(v):
                if free >> w & 1:
                    moved = config[:slot] + (w,) + config[slot + 1:]
                    nbrs.append(index[moved])
        nbrs.sort()
        adjacency.append(tuple(nbrs))
    logger.debug(f"built marked token graph n={graph.n} k={k}: {len(configs)} configs")
    return MarkedTokenGraph(underlying=graph, k=k, configs=configs, adjacency=tuple(adjacency))


def marked_degree(graph: SimpleGraph, config) -> int:
    """Sum over particles of the number of free neighbours."""
    if not isinstance(config, MarkedConfig):
        config = MarkedConfig(tuple(config))
    if any(not 0 <= v < graph.n for v in config.positions):
        raise PreconditionError(f"{config} has labels outside 0..{graph.n - 1}")
    occupied = config.support
    return sum(popcount(graph.adj[v] & ~occupied) for v in config.positions)


def _support(config) -> int:
    mask = 0
    for v in config:
        mask |= 1 << v
    return mask


def projection_check(marked: MarkedTokenGraph, max_configs: int = kpg.DEFAULT_MAX_CONFIGS) -> CheckResult:
    """Forgetting the order is k!-to-1 onto the unmarked configs and maps edges to edges.

    Also checks that marked degrees equal the unmarked degree of the support
    and that each connected marked component projects onto a connected set.
    """
    graph, k = marked.underlying, marked.k
    if not 1 <= k <= graph.n - 1:
        raise PreconditionError(f"projection needs 1 <= k <= {graph.n - 1}, got {k}")
    plain = kpg.build(graph, k, max_configs, allow_disconnected=True)
    image = [plain.index[_support(c)] for c in marked.configs]
    problems: List[str] = []

    fibres: Dict[int, int] = {}
    for idx in image:
        fibres[idx] = fibres.get(idx, 0) + 1
    if len(fibres) != plain.order or set(fibres.values()) != {factorial(k)}:
        problems.append("projection is not k!-to-1")

    plain_edges = {(i, j) for i, j in plain.edges()}
    for i, j in marked.edges():
        a, b = sorted((image[i], image[j]))
        if (a, b) not in plain_edges:
            problems.append(f"marked edge {marked.configs[i]}-{marked.configs[j]} does not project to an edge")
            break

    if any(len(marked.adjacency[i]) != plain.degrees[image[i]] for i in range(marked.order)):
        problems.append("marked degree differs from the unmarked degree")

    for component in adjacency_utils.components(marked.adjacency):
        projected = sorted({image[v] for v in component})
        position = {idx: p for p, idx in enumerate(projected)}
        sub = [[position[j] for j in plain.adjacency[i] if j in position] for i in projected]
        if not adjacency_utils.is_connected(sub):
            problems.append("a marked component projects onto a disconnected set")
            break

    return CheckResult(not problems, "; ".join(problems), {"fibre_size": factorial(k), "unmarked": comb(graph.n, k)})


def marked_connectivity_profile(
    graph: SimpleGraph, kmax: int, max_configs: int = kpg.DEFAULT_MAX_CONFIGS
) -> List[bool]:
    """Connectivity of the marked graph for k = 1..kmax.

    See :func:`monotone_implication` for the relation between entries.
    """
    if not 1 <= kmax <= graph.n - 1:
        raise PreconditionError(f"kmax={kmax} outside 1..{graph.n - 1}")
    profile = [
        adjacency_utils.is_connected(build_marked(graph, k, max_configs).adjacency)
        for k in range(1, kmax + 1)
    ]
    return profile


def monotone_implication(profile: List[bool], n: int) -> bool:
    """Connected at k = n-1 implies connected for every computed k."""
    if len(profile) < n - 1:
        return True
    return not profile[n - 2] or all(profile)
