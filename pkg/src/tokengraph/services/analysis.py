"""Structural analysis of token graphs against exhaustive oracles.

Degree and level sets, clique and Johnson-subgraph counts, the diameter
formula for diameter-2 graphs, vertex connectivity, automorphism lifting
and the densest-subgraph duality.
"""

import logging
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..exceptions import CapExceededError, PreconditionError
from ..models.graph import SimpleGraph
from ..models.report import (
    CheckResult,
    ConnectivityReport,
    DegreeProfile,
    DiameterReport,
)
from ..models.token_graph import TokenGraph
from ..utils import adjacency as adjacency_utils
from ..utils.bitset import iter_bits, iter_k_subsets, popcount
from . import canonical, graph_core, kpg

logger = logging.getLogger(__name__)

DEFAULT_ORACLE_CAP = 500
DEFAULT_CLIQUE_ORACLE_CAP = 5000


def _binom(n: int, k: int) -> int:
    """Binomial coefficient that is 0 for negative arguments."""
    if n < 0 or k < 0 or k > n:
        return 0
    return comb(n, k)


def _require_regular(graph: SimpleGraph, what: str) -> int:
    d = graph.regular_degree
    if d is None:
        raise PreconditionError(f"{what} needs a regular underlying graph")
    return d


# ---------------------------------------------------------------------------
# degree and level sets
# ---------------------------------------------------------------------------

def degree_profile(tg: TokenGraph) -> DegreeProfile:
    _require_regular(tg.underlying, "degree profile")
    levels = kpg.degree_levels(tg)
    return DegreeProfile(degree_set=sorted(levels), level_counts=levels)


def level_set_identity(tg: TokenGraph) -> CheckResult:
    """Each degree level l counts the k-subsets with (k*d - l)/2 induced edges,
    and equally the (n-k)-subsets with ((n-k)*d - l)/2 induced edges."""
    graph = tg.underlying
    d = _require_regular(graph, "level-set identity")
    n, k = graph.n, tg.k
    profile = degree_profile(tg)
    side = kpg.induced_edge_levels(graph, k)
    other = kpg.induced_edge_levels(graph, n - k)
    mismatches = []
    for l, count in profile.level_counts.items():
        if (k * d - l) % 2:
            mismatches.append(f"degree {l} has the wrong parity")
            continue
        own = side.get((k * d - l) // 2, 0)
        dual = other.get(((n - k) * d - l) // 2, 0)
        if not count == own == dual:
            mismatches.append(f"degree {l}: {count} configs, {own} on side k, {dual} on side n-k")
    return CheckResult(not mismatches, "; ".join(mismatches[:3]))


def degree_set(graph: SimpleGraph, k: int, max_configs: int = kpg.DEFAULT_MAX_CONFIGS) -> List[int]:
    return degree_profile(kpg.build(graph, k, max_configs)).degree_set


def degree_set_monotonicity(
    graph: SimpleGraph, upto: int, max_configs: int = kpg.DEFAULT_MAX_CONFIGS
) -> bool:
    """|D_1| <= ... <= |D_upto| and the mirrored chain |D_{n-1}| <= ... <= |D_{n-upto}|."""
    _require_regular(graph, "degree-set monotonicity")
    n = graph.n
    if not 1 <= upto <= n // 2:
        raise PreconditionError(f"upto={upto} outside 1..{n // 2}")
    rising = [len(degree_set(graph, k, max_configs)) for k in range(1, upto + 1)]
    mirrored = [len(degree_set(graph, n - k, max_configs)) for k in range(1, upto + 1)]
    ascending = all(a <= b for a, b in zip(rising, rising[1:]))
    mirrored_ok = all(a <= b for a, b in zip(mirrored, mirrored[1:]))
    logger.debug(f"degree-set sizes {rising}, mirrored {mirrored}")
    return ascending and mirrored_ok


# ---------------------------------------------------------------------------
# cliques and Johnson subgraphs
# ---------------------------------------------------------------------------

def clique_count_formula(graph: SimpleGraph, k: int, c: int) -> int:
    """(C(n-c, k-1) + C(n-c, k-c+1)) times the number of c-cliques of the underlying graph.

    For c = 2 both terms describe the same edges, so the value is twice the
    edge count of the token graph.
    """
    if c < 2:
        raise PreconditionError(f"clique size must be >= 2, got {c}")
    if c > graph.n:
        return 0
    n = graph.n
    return (_binom(n - c, k - 1) + _binom(n - c, k - (c - 1))) * graph_core.count_cliques(graph, c)


def count_token_graph_cliques(tg: TokenGraph, c: int, cap: int = DEFAULT_CLIQUE_ORACLE_CAP) -> int:
    """Brute-force count of complete subgraphs on c vertices of the token graph."""
    if tg.order > cap:
        raise CapExceededError("token-graph clique oracle", tg.order, cap)
    if c < 1:
        raise PreconditionError(f"clique size must be >= 1, got {c}")
    higher = []
    for i, nbrs in enumerate(tg.adjacency):
        mask = 0
        for j in nbrs:
            if j > i:
                mask |= 1 << j
        higher.append(mask)

    def extend(candidates: int, missing: int) -> int:
        if missing == 0:
            return 1
        if popcount(candidates) < missing:
            return 0
        return sum(extend(candidates & higher[v], missing - 1) for v in iter_bits(candidates))

    return extend((1 << tg.order) - 1, c)


def regular_clique_presence(graph: SimpleGraph, k: int, c: int) -> CheckResult:
    """A c-clique in a regular non-complete graph forces a c-clique in the token graph.

    Complete graphs give Johnson graphs, where the implication does not hold
    (K4 with k = 2 has triangles but no 4-clique), so they pass vacuously.
    """
    _require_regular(graph, "clique presence check")
    value = clique_count_formula(graph, k, c)
    if graph.edge_count == graph.n * (graph.n - 1) // 2:
        return CheckResult(True, "complete graph", {"formula": value})
    has_clique = c <= graph.n and graph_core.count_cliques(graph, c) > 0
    return CheckResult(not has_clique or value > 0, data={"formula": value})


def johnson_subgraph_range(n: int, k: int, c: int) -> Tuple[int, int]:
    return max(1, k - (n - c)), min(k, c - 1)


def johnson_subgraph_count(graph: SimpleGraph, k: int, c: int, kprime: int) -> int:
    """C(n-c, k-k') times the number of c-cliques."""
    low, high = johnson_subgraph_range(graph.n, k, c)
    if not low <= kprime <= high:
        raise PreconditionError(f"k'={kprime} outside {low}..{high} for n={graph.n}, k={k}, c={c}")
    return _binom(graph.n - c, k - kprime) * graph_core.count_cliques(graph, c)


def token_subgraph(tg: TokenGraph, indices: Sequence[int]) -> SimpleGraph:
    """Induced subgraph of the token graph on ``indices``, relabelled in the given order."""
    position = {idx: p for p, idx in enumerate(indices)}
    edges = [
        (position[i], position[j])
        for i in indices
        for j in tg.adjacency[i]
        if j in position and position[j] > position[i]
    ]
    return SimpleGraph.from_edges(len(indices), edges)


def johnson_subgraph_oracle(tg: TokenGraph, c: int, kprime: int) -> CheckResult:
    """Every (c-clique C, fixed (k-k')-set F outside C) spans a copy of J(c, k').

    Returns the number of pairs in ``data["pairs"]``; ``ok`` when every spanned
    subgraph has the canonical form of a freshly built J(c, k').
    """
    graph = tg.underlying
    k = tg.k
    low, high = johnson_subgraph_range(graph.n, k, c)
    if not low <= kprime <= high:
        raise PreconditionError(f"k'={kprime} outside {low}..{high}")
    target = canonical.canonical_form(_johnson_simple(c, kprime))
    pairs = 0
    bad = []
    for clique in graph_core.iter_cliques(graph, c):
        outside = graph.vertex_mask & ~clique
        outside_vertices = list(iter_bits(outside))
        for fixed_local in iter_k_subsets(len(outside_vertices), k - kprime):
            fixed = 0
            for p in iter_bits(fixed_local):
                fixed |= 1 << outside_vertices[p]
            members = list(iter_bits(clique))
            spanned = []
            for chosen in iter_k_subsets(c, kprime):
                mask = fixed
                for p in iter_bits(chosen):
                    mask |= 1 << members[p]
                spanned.append(tg.index[mask])
            pairs += 1
            if canonical.canonical_form(token_subgraph(tg, spanned)) != target:
                bad.append((clique, fixed))
    return CheckResult(not bad, f"{len(bad)} pairs not isomorphic" if bad else "", {"pairs": pairs})


def _johnson_simple(c: int, kprime: int) -> SimpleGraph:
    tg = kpg.johnson(c, kprime)
    return token_subgraph(tg, range(tg.order))


# ---------------------------------------------------------------------------
# diameter and connectivity
# ---------------------------------------------------------------------------

def min_outer_boundary(graph: SimpleGraph, k: int) -> Tuple[int, int]:
    """Smallest outer boundary over all k-subsets, with the lowest-ranked witness."""
    best, witness = None, 0
    for mask in iter_k_subsets(graph.n, k):
        size = popcount(graph_core.outer_boundary(graph, mask))
        if best is None or size < best:
            best, witness = size, mask
    return best, witness


def diameter_report(graph: SimpleGraph, k: int, max_configs: int = kpg.DEFAULT_MAX_CONFIGS) -> DiameterReport:
    if graph_core.diameter(graph) != 2:
        raise PreconditionError("diameter formula needs an underlying graph of diameter 2")
    if not 1 <= k <= graph.n // 2:
        raise PreconditionError(f"k={k} outside 1..{graph.n // 2}")
    outer, witness = min_outer_boundary(graph, k)
    delta = min(graph.n - outer - k, k)
    tg = kpg.build(graph, k, max_configs)
    report = DiameterReport(
        min_outer_boundary=outer,
        witness=witness,
        delta2k=delta,
        formula_diameter=k + delta,
        bfs_diameter=adjacency_utils.diameter(tg.adjacency),
    )
    if not report.agree:
        logger.info(f"diameter formula {report.formula_diameter} vs BFS {report.bfs_diameter} "
                    f"for {graph.name or 'graph'} k={k}")
    return report


def kpg_vertex_connectivity(tg: TokenGraph, oracle_cap: int = DEFAULT_ORACLE_CAP) -> ConnectivityReport:
    """Claimed connectivity is the minimum degree; max-flow confirms it under the cap."""
    _require_regular(tg.underlying, "token-graph connectivity")
    report = ConnectivityReport(claimed=min(tg.degrees))
    if tg.order <= oracle_cap:
        report.exact = graph_core.adjacency_vertex_connectivity(tg.adjacency)
    return report


# ---------------------------------------------------------------------------
# automorphisms
# ---------------------------------------------------------------------------

def lift_table(tg: TokenGraph, group: Sequence[Sequence[int]]) -> np.ndarray:
    """Row ``g`` is the config permutation induced by ``group[g]``.

    Masks of a fixed size are numerically sorted in rank order, so images are
    located with ``searchsorted``.
    """
    if not group:
        return np.zeros((0, tg.order), dtype=np.int64)
    masks = np.array(tg.masks, dtype=np.uint64)
    bits = (masks[:, None] >> np.arange(tg.n, dtype=np.uint64)) & np.uint64(1)
    weights = np.left_shift(np.uint64(1), np.array(group, dtype=np.uint64))
    images = bits @ weights.T
    table = np.minimum(np.searchsorted(masks, images), len(masks) - 1).T
    if not np.array_equal(masks[table], images.T):
        raise PreconditionError("a permutation does not map configs onto configs")
    return table.astype(np.int64)


def lift_automorphism(tg: TokenGraph, phi: Sequence[int]) -> Tuple[int, ...]:
    """Config permutation induced by a vertex automorphism ``phi``."""
    if not graph_core.is_automorphism(tg.underlying, phi):
        raise PreconditionError(f"{tuple(phi)} is not an automorphism of the underlying graph")
    return tuple(int(i) for i in lift_table(tg, [phi])[0])


def compose(p: Sequence[int], q: Sequence[int]) -> Tuple[int, ...]:
    """``p after q``."""
    return tuple(p[q[i]] for i in range(len(q)))


def preserves_adjacency(tg: TokenGraph, perm: Sequence[int]) -> bool:
    return bool(_edges_preserved(tg, np.asarray([perm], dtype=np.int64))[0])


def _edges_preserved(tg: TokenGraph, table: np.ndarray) -> np.ndarray:
    """Per row of ``table``: every token-graph edge maps onto an edge."""
    edges = np.array(tg.edges(), dtype=np.int64).reshape(-1, 2)
    adj = np.zeros((tg.order, tg.order), dtype=bool)
    adj[edges[:, 0], edges[:, 1]] = True
    adj[edges[:, 1], edges[:, 0]] = True
    return adj[table[:, edges[:, 0]], table[:, edges[:, 1]]].all(axis=1)


def automorphism_lift_check(
    tg: TokenGraph,
    cap: int = graph_core.DEFAULT_AUTOMORPHISM_CAP,
    group_limit: Optional[int] = None,
) -> CheckResult:
    """Lifts are token-graph automorphisms and form a homomorphic image of Aut(L).

    The homomorphism property is checked against up to eight right factors.
    ``data`` reports whether the lift is injective and, for token graphs with
    at most ``cap`` configurations, whether the lifted group sits inside the
    brute-force automorphism group of the token graph.
    """
    group = graph_core.automorphisms(tg.underlying, cap, group_limit)
    table = lift_table(tg, group)
    row_of = {phi: g for g, phi in enumerate(group)}
    problems = []
    if not np.array_equal(table[row_of[tuple(range(tg.n))]], np.arange(tg.order)):
        problems.append("identity does not lift to identity")
    if not _edges_preserved(tg, table).all():
        problems.append("a lift breaks adjacency")
    homomorphic = all(
        np.array_equal(table[row_of[compose(phi, psi)]], table[g][table[row_of[psi]]])
        for g, phi in enumerate(group)
        for psi in group[:8]
    )
    if not homomorphic:
        problems.append("lift is not a homomorphism")

    data: Dict = {
        "aut_order": len(group),
        "injective": len(np.unique(table, axis=0)) == len(group),
    }
    if tg.order <= cap:
        full = set(graph_core.automorphisms(token_subgraph(tg, range(tg.order)), cap))
        data["token_aut_order"] = len(full)
        if not {tuple(int(i) for i in row) for row in table} <= full:
            problems.append("lifted group not contained in Aut of the token graph")
    return CheckResult(not problems, "; ".join(problems), data)


# ---------------------------------------------------------------------------
# densest subgraphs
# ---------------------------------------------------------------------------

def density_duality(graph: SimpleGraph, k: int, cap: int = graph_core.DEFAULT_SUBSET_CAP) -> CheckResult:
    """Densest k-subsets have densest complements and minimal boundary."""
    _require_regular(graph, "density duality")
    n = graph.n
    if not 1 <= k <= n - 1:
        raise PreconditionError(f"k={k} outside 1..{n - 1}")
    witnesses = graph_core.all_extreme_k_subgraphs(graph, k, "densest", cap)
    _, dual_max = graph_core.extreme_k_subgraph(graph, n - k, "densest", cap)
    min_boundary = min(graph.boundary_edge_count(m) for m in iter_k_subsets(n, k))
    universe = graph.vertex_mask
    problems = []
    for mask in witnesses:
        if graph.induced_edge_count(universe & ~mask) != dual_max:
            problems.append(f"complement of {mask:#x} is not densest")
        if graph.boundary_edge_count(mask) != min_boundary:
            problems.append(f"boundary of {mask:#x} is not minimal")
    return CheckResult(not problems, "; ".join(problems[:3]),
                       {"witnesses": len(witnesses), "min_boundary": min_boundary})


def least_dense_exchange(graph: SimpleGraph, k: int, cap: int = graph_core.DEFAULT_SUBSET_CAP) -> CheckResult:
    """A least-dense k-subset of L is a densest k-subset of the complement graph."""
    co = graph_core.complement(graph)
    low_mask, low_edges = graph_core.extreme_k_subgraph(graph, k, "least_dense", cap)
    high_mask, high_edges = graph_core.extreme_k_subgraph(co, k, "densest", cap)
    pairs = comb(k, 2)
    ok = (
        low_edges + high_edges == pairs
        and co.induced_edge_count(low_mask) == high_edges
        and graph.induced_edge_count(high_mask) == low_edges
    )
    return CheckResult(ok, "" if ok else f"{low_edges} + {high_edges} != {pairs}")


def densest_degree_bounds(tg: TokenGraph) -> CheckResult:
    """Min and max token degree come from densest and least-dense k-subgraphs."""
    graph = tg.underlying
    d = _require_regular(graph, "degree bounds")
    k = tg.k
    _, dense = graph_core.extreme_k_subgraph(graph, k, "densest", max(tg.order, 1))
    _, sparse = graph_core.extreme_k_subgraph(graph, k, "least_dense", max(tg.order, 1))
    expected = (k * d - 2 * dense, k * d - 2 * sparse)
    actual = (min(tg.degrees), max(tg.degrees))
    return CheckResult(expected == actual, f"expected {expected}, got {actual}")


# ---------------------------------------------------------------------------
# global structure
# ---------------------------------------------------------------------------

def bipartite_equivalence(tg: TokenGraph) -> CheckResult:
    """Token graph bipartite iff the underlying graph is; short odd cycles forbid it."""
    graph = tg.underlying
    tg_bip = adjacency_utils.is_bipartite(tg.adjacency)
    l_bip = graph_core.is_bipartite(graph)
    girth = graph_core.odd_girth(graph)
    contrapositive = not (girth is not None and girth <= graph.n - tg.k + 1 and tg_bip)
    ok = tg_bip == l_bip and contrapositive
    return CheckResult(ok, "" if ok else f"token bipartite={tg_bip}, underlying bipartite={l_bip}",
                       {"token_bipartite": tg_bip, "odd_girth": girth})


def average_degree_identity(tg: TokenGraph) -> CheckResult:
    d = _require_regular(tg.underlying, "average degree")
    ratio = kpg.avg_degree_ratio(tg)
    expected = Fraction(d, tg.n - 1)
    bounded = ratio <= 1 and ((ratio == 1) == (d == tg.n - 1))
    return CheckResult(ratio == expected and bounded, f"{ratio} vs {expected}", {"ratio": str(ratio)})
