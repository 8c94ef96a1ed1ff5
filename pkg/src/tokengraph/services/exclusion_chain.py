"""Discrete-time exclusion process on a token graph.

At each step one of the k particles is chosen uniformly and moves to a
uniformly chosen free neighbour; a blocked particle leaves the configuration
unchanged. Transition probabilities are exact fractions.
"""

import logging
from collections import deque
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Sequence

import numpy as np

from ..exceptions import CapExceededError, PreconditionError
from ..models.chain import (
    BoundaryPartition,
    ChainReport,
    ChainStructure,
    LumpabilityResult,
    Partition,
    StochasticMatrix,
)
from ..models.report import CheckResult
from ..models.token_graph import TokenGraph
from ..utils.bitset import iter_bits, popcount
from . import analysis, canonical, graph_core

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-10
RESIDUAL_TOL = 1e-12
EXACT_SOLVE_CAP = 64
DEFAULT_GROUP_LIMIT = 5040
MAX_WALK_LENGTH = 12


# ---------------------------------------------------------------------------
# matrix and structure
# ---------------------------------------------------------------------------

def transition_matrix(tg: TokenGraph) -> StochasticMatrix:
    """Exact transition matrix of the exclusion process on ``tg``."""
    graph, k = tg.underlying, tg.k
    rows = []
    for i, mask in enumerate(tg.masks):
        row: Dict[int, Fraction] = {}
        stay = Fraction(0)
        for v in iter_bits(mask):
            free = graph.adj[v] & ~mask
            f = popcount(free)
            if not f:
                stay += Fraction(1, k)
                continue
            step = Fraction(1, k * f)
            moved = mask ^ (1 << v)
            for w in iter_bits(free):
                row[tg.index[moved | 1 << w]] = step
        if stay:
            row[i] = stay
        rows.append(tuple(sorted(row.items())))
    return StochasticMatrix(size=tg.order, rows=tuple(rows))


def _reach(size: int, succ: Sequence[Sequence[int]], start: int) -> List[int]:
    level = [-1] * size
    level[start] = 0
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in succ[u]:
            if level[v] < 0:
                level[v] = level[u] + 1
                queue.append(v)
    return level


def chain_structure(P: StochasticMatrix) -> ChainStructure:
    """Irreducibility of the support digraph and the period of state 0's class.

    The period is the gcd of ``level[u] + 1 - level[v]`` over support arcs
    inside the class, with BFS levels from state 0.
    """
    if P.size == 0:
        raise PreconditionError("empty chain")
    succ = [P.support(i) for i in range(P.size)]
    pred: List[List[int]] = [[] for _ in range(P.size)]
    for u, targets in enumerate(succ):
        for v in targets:
            pred[v].append(u)

    forward = _reach(P.size, succ, 0)
    backward = _reach(P.size, pred, 0)
    irreducible = all(x >= 0 for x in forward) and all(x >= 0 for x in backward)

    period = 0
    for u in range(P.size):
        if forward[u] < 0 or backward[u] < 0:
            continue
        for v in succ[u]:
            if forward[v] >= 0 and backward[v] >= 0:
                period = gcd(period, abs(forward[u] + 1 - forward[v]))
    return ChainStructure(irreducible=irreducible, period=period)


# ---------------------------------------------------------------------------
# stationary law
# ---------------------------------------------------------------------------

def _require_irreducible(P: StochasticMatrix) -> None:
    if not chain_structure(P).irreducible:
        raise PreconditionError("stationary law needs an irreducible chain")


def stationary(P: StochasticMatrix) -> List[float]:
    """Unique stationary vector by a direct solve of pi P = pi, sum(pi) = 1."""
    _require_irreducible(P)
    system = P.to_dense().T - np.eye(P.size)
    system[-1, :] = 1.0
    rhs = np.zeros(P.size)
    rhs[-1] = 1.0
    pi = np.linalg.solve(system, rhs)
    res = residual(P, pi)
    if res > RESIDUAL_TOL:
        logger.warning(f"stationary residual {res:.3e} above {RESIDUAL_TOL:.0e}")
    return [float(x) for x in pi]


def residual(P: StochasticMatrix, pi: Sequence[float]) -> float:
    """max |pi P - pi|."""
    vec = np.asarray(pi, dtype=float)
    return float(np.max(np.abs(vec @ P.to_dense() - vec))) if P.size else 0.0


def exact_stationary(P: StochasticMatrix, cap: int = EXACT_SOLVE_CAP) -> List[Fraction]:
    """Stationary vector in exact rationals by Gauss-Jordan elimination."""
    if P.size > cap:
        raise CapExceededError("exact stationary solve states", P.size, cap)
    _require_irreducible(P)
    n = P.size
    dense = P.to_fraction_rows()
    # rows of (P^T - I) with the last equation replaced by normalisation
    system = [[dense[j][i] - (1 if i == j else 0) for j in range(n)] + [Fraction(0)] for i in range(n - 1)]
    system.append([Fraction(1)] * n + [Fraction(1)])

    for col in range(n):
        pivot = next(r for r in range(col, n) if system[r][col])
        system[col], system[pivot] = system[pivot], system[col]
        lead = system[col][col]
        system[col] = [x / lead for x in system[col]]
        for r in range(n):
            factor = system[r][col]
            if r != col and factor:
                system[r] = [a - factor * b for a, b in zip(system[r], system[col])]
    return [system[i][n] for i in range(n)]


def proportional_to_degree(tg: TokenGraph, pi: Sequence[float], tol: float = DEFAULT_TOL) -> bool:
    """Whether pi(v) / deg(v) is constant over all configs."""
    if any(d == 0 for d in tg.degrees):
        return False
    ratios = [p / d for p, d in zip(pi, tg.degrees)]
    return max(ratios) - min(ratios) <= tol


# ---------------------------------------------------------------------------
# partitions
# ---------------------------------------------------------------------------

def _partition_by_key(keys: Sequence, kind: str, certificates=None) -> Partition:
    class_id: Dict = {}
    class_of = []
    representatives = []
    certs = []
    for i, key in enumerate(keys):
        if key not in class_id:
            class_id[key] = len(representatives)
            representatives.append(i)
            if certificates is not None:
                certs.append(certificates[i])
        class_of.append(class_id[key])
    return Partition(
        class_of=tuple(class_of),
        representatives=tuple(representatives),
        certificates=tuple(certs),
        kind=kind,
    )


def boundary_partition(tg: TokenGraph) -> BoundaryPartition:
    """Configs grouped by the isomorphism type of their boundary bipartite graph."""
    if tg.underlying.regular_degree is None:
        raise PreconditionError("boundary partition needs a regular underlying graph")
    certs = [canonical.certificate(graph_core.boundary_bipartite(tg.underlying, m)) for m in tg.masks]
    part = _partition_by_key(certs, "boundary", certs)
    logger.debug(f"boundary partition n={tg.n} k={tg.k}: {part.class_count} classes")
    return part


def orbit_partition(
    tg: TokenGraph,
    cap: int = graph_core.DEFAULT_AUTOMORPHISM_CAP,
    group_limit: Optional[int] = DEFAULT_GROUP_LIMIT,
) -> Partition:
    """Configs grouped by orbits of the lifted automorphism group of the underlying graph."""
    group = graph_core.automorphisms(tg.underlying, cap, group_limit)
    # the group is closed, so each orbit is one column of the lift table
    orbit_min = analysis.lift_table(tg, group).min(axis=0)
    return _partition_by_key([int(x) for x in orbit_min], "orbit")


def _check_dims(P: StochasticMatrix, part: Partition) -> None:
    if len(part.class_of) != P.size:
        raise PreconditionError(f"partition covers {len(part.class_of)} states, chain has {P.size}")


def _class_mass(P: StochasticMatrix, part: Partition, i: int) -> List[Fraction]:
    mass = [Fraction(0)] * part.class_count
    for col, p in P.rows[i]:
        mass[part.class_of[col]] += p
    return mass


# ---------------------------------------------------------------------------
# lumpability
# ---------------------------------------------------------------------------

def check_strong_lumpability(P: StochasticMatrix, part: Partition) -> LumpabilityResult:
    """Row sums into every class must be constant within each class."""
    _check_dims(P, part)
    max_dev = Fraction(0)
    worst = None
    for members in part.members():
        reference = _class_mass(P, part, members[0])
        for i in members[1:]:
            for target, (a, b) in enumerate(zip(reference, _class_mass(P, part, i))):
                dev = abs(a - b)
                if dev > max_dev:
                    max_dev, worst = dev, (members[0], i, target)
    return LumpabilityResult(ok=max_dev == 0, max_dev=max_dev, worst=worst)


def lumped_matrix(P: StochasticMatrix, part: Partition) -> StochasticMatrix:
    """Quotient chain on the classes of a strongly lumpable partition."""
    result = check_strong_lumpability(P, part)
    if not result.ok:
        raise PreconditionError(f"partition is not strongly lumpable (deviation {result.max_dev})")
    rows = []
    for rep in part.representatives:
        mass = _class_mass(P, part, rep)
        rows.append(tuple((c, p) for c, p in enumerate(mass) if p))
    return StochasticMatrix(size=part.class_count, rows=tuple(rows))


def class_constancy(pi: Sequence[float], part: Partition, tol: float = DEFAULT_TOL) -> CheckResult:
    if len(pi) != len(part.class_of):
        raise PreconditionError(f"vector has {len(pi)} entries, partition covers {len(part.class_of)}")
    spreads = [max(pi[i] for i in m) - min(pi[i] for i in m) for m in part.members()]
    max_spread = max(spreads, default=0.0)
    return CheckResult(max_spread <= tol, "" if max_spread <= tol else f"spread {max_spread:.3e}",
                       {"max_spread": max_spread})


def transition_vector_identity(P: StochasticMatrix, part: Partition) -> CheckResult:
    """Equivalent configs have equal sorted outgoing rows and incoming columns."""
    _check_dims(P, part)
    incoming: List[List[Fraction]] = [[] for _ in range(P.size)]
    for row in P.rows:
        for col, p in row:
            incoming[col].append(p)
    for members in part.members():
        rep = members[0]
        out_ref = sorted(p for _, p in P.rows[rep])
        in_ref = sorted(incoming[rep])
        for i in members[1:]:
            if sorted(p for _, p in P.rows[i]) != out_ref:
                return CheckResult(False, f"outgoing rows of states {rep} and {i} differ")
            if sorted(incoming[i]) != in_ref:
                return CheckResult(False, f"incoming columns of states {rep} and {i} differ")
    return CheckResult(True)


# ---------------------------------------------------------------------------
# closed walks
# ---------------------------------------------------------------------------

def closed_walk_profile(tg: TokenGraph, lmax: int) -> List[List[int]]:
    """``profile[i][l-1]`` is the number of closed walks of length l at config i.

    Counts come from the diagonals of adjacency powers; int64 is used while
    the bound max_degree**lmax fits, Python integers otherwise.
    """
    if not 1 <= lmax <= MAX_WALK_LENGTH:
        raise PreconditionError(f"lmax={lmax} outside 1..{MAX_WALK_LENGTH}")
    max_degree = max(tg.degrees, default=0)
    dtype = np.int64 if max_degree ** lmax < 2 ** 62 else object
    adj = np.zeros((tg.order, tg.order), dtype=dtype)
    for i, nbrs in enumerate(tg.adjacency):
        for j in nbrs:
            adj[i, j] = 1
    power = np.eye(tg.order, dtype=dtype)
    diagonals = []
    for _ in range(lmax):
        power = power.dot(adj)
        diagonals.append([int(x) for x in np.diagonal(power)])
    return [list(walks) for walks in zip(*diagonals)]


def closed_walk_class_check(profile: Sequence[Sequence[int]], part: Partition) -> CheckResult:
    for members in part.members():
        first = list(profile[members[0]])
        for i in members[1:]:
            if list(profile[i]) != first:
                return CheckResult(False, f"closed-walk counts of states {members[0]} and {i} differ")
    return CheckResult(True)


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------

def chain_report(
    tg: TokenGraph,
    tol: float = DEFAULT_TOL,
    exact_cap: int = EXACT_SOLVE_CAP,
    automorphism_cap: int = graph_core.DEFAULT_AUTOMORPHISM_CAP,
) -> ChainReport:
    """Structure, stationary law and lumping of the chain on ``tg``.

    Boundary classes are reported for regular underlying graphs only; the
    orbit partition is skipped when the automorphism search exceeds its caps.
    """
    P = transition_matrix(tg)
    structure = chain_structure(P)
    report = ChainReport(irreducible=structure.irreducible, period=structure.period, stationary=[])
    if not structure.irreducible:
        logger.info(f"chain on n={tg.n} k={tg.k} is reducible")
        return report

    report.stationary = stationary(P)
    report.residual = residual(P, report.stationary)
    report.converges = structure.period == 1
    report.proportional_to_degree = proportional_to_degree(tg, report.stationary, tol)
    if P.size <= exact_cap:
        report.exact_stationary = exact_stationary(P, exact_cap)

    if tg.underlying.regular_degree is not None:
        part = boundary_partition(tg)
        lump = check_strong_lumpability(P, part)
        report.lumpable = lump.ok
        report.classes = [
            {
                "certificate": part.certificates[c].hex(),
                "size": len(members),
                "pi": report.stationary[part.representatives[c]],
            }
            for c, members in enumerate(part.members())
        ]
        if lump.ok:
            report.lumped = [
                [str(p) for p in row]
                for row in lumped_matrix(P, part).to_fraction_rows()
            ]

    try:
        orbits = orbit_partition(tg, automorphism_cap)
        report.orbit_lumpable = check_strong_lumpability(P, orbits).ok
    except CapExceededError as e:
        logger.debug(f"orbit partition skipped: {e}")
    return report
