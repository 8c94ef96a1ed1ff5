"""Construction of token graphs and their closed-form counts.

Configurations are k-subsets stored as bitmasks in rank order; two
configurations are adjacent when they differ by moving one particle along
an edge of the underlying graph.
"""

import logging
from fractions import Fraction
from math import comb
from typing import Dict, List, Tuple

from ..exceptions import CapExceededError, PreconditionError, TokenGraphError
from ..models.graph import SimpleGraph
from ..models.report import CheckResult, EdgeCountForms
from ..models.token_graph import Config, DualMap, TokenGraph
from ..utils.bitset import iter_bits, iter_k_subsets, lowest_bit, popcount
from . import graph_core

logger = logging.getLogger(__name__)

DEFAULT_MAX_CONFIGS = 200_000


def _check_size(n: int, k: int, max_configs: int) -> int:
    if not 1 <= k <= n - 1:
        raise PreconditionError(f"k={k} outside 1..{n - 1}")
    total = comb(n, k)
    if total > max_configs:
        raise CapExceededError(f"token graph C({n},{k})", total, max_configs)
    return total


def _construct(graph: SimpleGraph, k: int) -> TokenGraph:
    masks = tuple(iter_k_subsets(graph.n, k))
    index = {m: i for i, m in enumerate(masks)}
    adjacency = []
    for mask in masks:
        nbrs = []
        for v in iter_bits(mask):
            moved = mask ^ (1 << v)
            for w in iter_bits(graph.adj[v] & ~mask):
                nbrs.append(index[moved | 1 << w])
        nbrs.sort()
        adjacency.append(tuple(nbrs))
    return TokenGraph(
        underlying=graph,
        k=k,
        masks=masks,
        adjacency=tuple(adjacency),
        degrees=tuple(len(a) for a in adjacency),
        index=index,
    )


def build(
    graph: SimpleGraph,
    k: int,
    max_configs: int = DEFAULT_MAX_CONFIGS,
    allow_disconnected: bool = False,
) -> TokenGraph:
    """Build the k-particle graph of ``graph``.

    Args:
        graph: underlying graph, connected unless ``allow_disconnected``
        k: particle count, 1 <= k <= n-1
        max_configs: cap on C(n, k)
        allow_disconnected: skip the connectivity precondition

    Returns:
        the token graph with configurations in rank order
    """
    total = _check_size(graph.n, k, max_configs)
    if not allow_disconnected and not graph_core.is_connected(graph):
        raise PreconditionError("underlying graph is disconnected")
    tg = _construct(graph, k)
    logger.debug(f"built token graph n={graph.n} k={k}: {total} configs, {tg.size} edges")
    return tg


def johnson(n: int, k: int, max_configs: int = DEFAULT_MAX_CONFIGS) -> TokenGraph:
    if n < 2:
        raise PreconditionError(f"Johnson graph needs n >= 2, got {n}")
    return build(graph_core.generate("complete", [n]), k, max_configs)


def config_degree(tg: TokenGraph, config) -> int:
    return tg.degrees[tg.index_of(config)]


def regular_degree_formula(graph: SimpleGraph, mask: int) -> int:
    """k*d - 2|E_v| for a d-regular graph."""
    d = graph.regular_degree
    if d is None:
        raise PreconditionError("degree formula needs a regular graph")
    return popcount(mask) * d - 2 * graph.induced_edge_count(mask)


def dual_map(tg: TokenGraph, max_configs: int = DEFAULT_MAX_CONFIGS) -> DualMap:
    """Complementation onto the (n-k)-particle graph, with an adjacency check both ways."""
    graph = tg.underlying
    dual = build(graph, graph.n - tg.k, max_configs, allow_disconnected=True)
    universe = graph.vertex_mask
    mapping = tuple(dual.index[universe & ~m] for m in tg.masks)

    verified = len(set(mapping)) == dual.order == tg.order
    if verified:
        for i, nbrs in enumerate(tg.adjacency):
            image = tuple(sorted(mapping[j] for j in nbrs))
            if image != dual.adjacency[mapping[i]]:
                verified = False
                break
    return DualMap(mapping=mapping, dual=dual, verified=verified)


def complement_partition(
    graph: SimpleGraph, k: int, max_configs: int = DEFAULT_MAX_CONFIGS
) -> CheckResult:
    """Token graphs of ``graph`` and its complement split the Johnson graph's edges.

    Neither side needs to be connected for the identity.
    """
    _check_size(graph.n, k, max_configs)
    other = graph_core.complement(graph)
    side = _construct(graph, k)
    co_side = _construct(other, k)
    full = k * (graph.n - k)

    violations: List[str] = []
    for i, mask in enumerate(side.masks):
        own = set(side.adjacency[i])
        co = set(co_side.adjacency[i])
        if own & co:
            violations.append(f"{Config(mask, k)} has edges on both sides")
        if side.degrees[i] + co_side.degrees[i] != full:
            violations.append(
                f"{Config(mask, k)}: deg {side.degrees[i]} + co-deg {co_side.degrees[i]} != {full}"
            )
        if len(violations) > 10:
            break

    johnson_edges = comb(graph.n, k) * full // 2
    if side.size + co_side.size != johnson_edges:
        violations.append(f"{side.size} + {co_side.size} != {johnson_edges} Johnson edges")
    return CheckResult(
        ok=not violations,
        detail=violations[0] if violations else "",
        data={"edges": side.size, "complement_edges": co_side.size, "johnson_edges": johnson_edges},
    )


def edge_count_closed_form(n: int, k: int, d: int) -> EdgeCountForms:
    """Both closed forms for |E_k| of a d-regular graph on n vertices.

    ``vs_underlying`` is C(n-2, k-1), the factor with |E_k| = C(n-2, k-1)|E|.
    """
    if not 1 <= k <= n - 1:
        raise PreconditionError(f"k={k} outside 1..{n - 1}")
    if not 1 <= d <= n - 1:
        raise PreconditionError(f"d={d} outside 1..{n - 1}")
    if n * d % 2:
        raise PreconditionError(f"no {d}-regular graph on {n} vertices (n*d odd)")

    short = Fraction(k * (n - k) * comb(n, k) * d, 2 * (n - 1))
    inner = sum(comb(d, l) * comb(n - 1 - d, k - 1 - l) * l for l in range(1, min(k - 1, d) + 1))
    summed = Fraction(d * k * comb(n, k) - n * inner, 2)
    if short.denominator != 1 or summed.denominator != 1:
        raise TokenGraphError(f"non-integral edge count for n={n} k={k} d={d}")
    return EdgeCountForms(
        short_form=int(short),
        sum_form=int(summed),
        vs_underlying=comb(n - 2, k - 1),
    )


def avg_degree_ratio(tg: TokenGraph) -> Fraction:
    """Average degree divided by the Johnson degree k(n-k); equals d/(n-1)."""
    if tg.underlying.regular_degree is None:
        raise PreconditionError("average degree ratio needs a regular underlying graph")
    avg = Fraction(sum(tg.degrees), tg.order)
    return avg / (tg.k * (tg.n - tg.k))


def moved_pair(a: int, b: int) -> Tuple[int, int]:
    """For adjacent configs, the vertex left by ``a`` and the vertex entered in ``b``."""
    return lowest_bit(a & ~b), lowest_bit(b & ~a)


def reconstruct_underlying(tg: TokenGraph) -> SimpleGraph:
    """Recover the underlying edge set from symmetric differences of token-graph edges."""
    edges = set()
    for i, j in tg.edges():
        v, w = moved_pair(tg.masks[i], tg.masks[j])
        edges.add((min(v, w), max(v, w)))
    rebuilt = SimpleGraph.from_edges(tg.n, sorted(edges))
    if rebuilt.adj != tg.underlying.adj:
        raise TokenGraphError("reconstructed edge set differs from the underlying graph")
    return rebuilt


def regular_identities(tg: TokenGraph) -> Dict[str, CheckResult]:
    """Degree identities that hold whenever the underlying graph is d-regular.

    Keys:
        degree_formula: deg = k*d - 2|E_v|
        parity: all degree differences even; deg even iff k*d even
        complement_constant: |E_{V-v}| - |E_v| = d(n-2k)/2
        edge_split: deg_{L_v}(v) + deg_{L_{V-w}}(v) = d - 1 along every edge
    """
    graph = tg.underlying
    d = graph.regular_degree
    if d is None:
        raise PreconditionError("identities need a regular underlying graph")
    n, k = graph.n, tg.k
    universe = graph.vertex_mask
    results: Dict[str, CheckResult] = {}

    bad = [i for i, m in enumerate(tg.masks) if tg.degrees[i] != regular_degree_formula(graph, m)]
    results["degree_formula"] = CheckResult(not bad, _first(tg, bad))

    parities = {deg % 2 for deg in tg.degrees}
    expected_parity = (k * d) % 2
    results["parity"] = CheckResult(
        parities == {expected_parity},
        "" if parities == {expected_parity} else f"parities {sorted(parities)}, k*d parity {expected_parity}",
    )

    constant = Fraction(d * (n - 2 * k), 2)
    bad = [
        i for i, m in enumerate(tg.masks)
        if graph.induced_edge_count(universe & ~m) - graph.induced_edge_count(m) != constant
    ]
    results["complement_constant"] = CheckResult(not bad, _first(tg, bad), {"constant": str(constant)})

    bad = []
    for i, j in tg.edges():
        for a, b in ((tg.masks[i], tg.masks[j]), (tg.masks[j], tg.masks[i])):
            v, _ = moved_pair(a, b)
            inside = popcount(graph.adj[v] & a)
            rest = popcount(graph.adj[v] & universe & ~b)
            if inside + rest != d - 1:
                bad.append(i)
    results["edge_split"] = CheckResult(not bad, _first(tg, bad))
    return results


def _first(tg: TokenGraph, bad: List[int]) -> str:
    return "" if not bad else f"violated at {tg.config(bad[0])} ({len(bad)} cases)"


def handshake(tg: TokenGraph) -> bool:
    return sum(tg.degrees) == 2 * len(tg.edges())


def degree_levels(tg: TokenGraph) -> Dict[int, int]:
    levels: Dict[int, int] = {}
    for deg in tg.degrees:
        levels[deg] = levels.get(deg, 0) + 1
    return dict(sorted(levels.items()))


def induced_edge_levels(graph: SimpleGraph, k: int) -> Dict[int, int]:
    """Number of k-subsets per induced edge count."""
    levels: Dict[int, int] = {}
    for mask in iter_k_subsets(graph.n, k):
        e = graph.induced_edge_count(mask)
        levels[e] = levels.get(e, 0) + 1
    return dict(sorted(levels.items()))
