"""Closed forms for special underlying families.

Cycles (run/necklace counts), the (n-2)-regular cocktail-party graphs,
stars, and the two-particle weighted-subset maximum.
"""

import logging
import math
from fractions import Fraction
from math import comb
from typing import Dict, Sequence

from ..exceptions import PreconditionError
from ..models.report import WeightedSubsetResult

logger = logging.getLogger(__name__)


def _binom(n: int, k: int) -> int:
    if n < 0 or k < 0 or k > n:
        return 0
    return comb(n, k)


# ---------------------------------------------------------------------------
# cycles
# ---------------------------------------------------------------------------

def necklace_level_count(n: int, k: int, l: int) -> int:
    """Configs of k particles on the n-cycle forming exactly l circular runs.

    These are the configs of degree 2l. Evaluated as
    C(k,l)C(n-k-1,l-1) + C(k-1,l-1)C(n-k,l), which equals
    :func:`necklace_level_count_rational` without the division.
    """
    if n < 3:
        raise PreconditionError(f"cycle needs n >= 3, got {n}")
    if not 1 <= k <= n // 2:
        raise PreconditionError(f"k={k} outside 1..{n // 2}")
    if not 1 <= l <= k:
        raise PreconditionError(f"l={l} outside 1..{k}")
    return _binom(k, l) * _binom(n - k - 1, l - 1) + _binom(k - 1, l - 1) * _binom(n - k, l)


def necklace_level_count_rational(n: int, k: int, l: int) -> Fraction:
    """C(k-1,l-1)C(n-k-1,l-1)n/l kept exact; always an integer equal to :func:`necklace_level_count`."""
    if not 1 <= l <= k:
        raise PreconditionError(f"l={l} outside 1..{k}")
    return Fraction(_binom(k - 1, l - 1) * _binom(n - k - 1, l - 1) * n, l)


def cycle_degree_profile(n: int, k: int) -> Dict[int, int]:
    """Degree -> count on the token graph of the n-cycle, zero levels omitted."""
    levels = {2 * l: necklace_level_count(n, k, l) for l in range(1, k + 1)}
    return {deg: count for deg, count in levels.items() if count}


def cycle_config_degree(n: int, vertices: Sequence[int]) -> int:
    """Twice the number of circular runs of occupied vertices."""
    vertices = list(vertices)
    occupied = set(vertices)
    if n < 3:
        raise PreconditionError(f"cycle needs n >= 3, got {n}")
    if any(not 0 <= v < n for v in occupied) or len(occupied) != len(vertices):
        raise PreconditionError(f"{vertices} is not a set of vertices of the {n}-cycle")
    if not 1 <= len(occupied) <= n // 2:
        raise PreconditionError(f"{len(occupied)} particles outside 1..{n // 2}")
    runs = sum(1 for v in occupied if (v - 1) % n not in occupied)
    return 2 * runs


# ---------------------------------------------------------------------------
# (n-2)-regular graphs
# ---------------------------------------------------------------------------

def _check_nm2(n: int, k: int) -> None:
    if n < 4 or n % 2:
        raise PreconditionError(f"(n-2)-regular family needs even n >= 4, got {n}")
    if not 1 <= k <= n // 2:
        raise PreconditionError(f"k={k} outside 1..{n // 2}")


def nm2_degree_set(n: int, k: int) -> list:
    """Degrees k(n-2) - k(k-1) + 2j for j = 0..k//2; j counts non-adjacent pairs inside the config."""
    _check_nm2(n, k)
    base = k * (n - 2) - k * (k - 1)
    return [base + 2 * j for j in range(k // 2 + 1)]


def nm2_level_count(n: int, k: int, j: int) -> int:
    """Configs containing exactly j of the n/2 non-adjacent pairs."""
    _check_nm2(n, k)
    if not 0 <= j <= k // 2:
        raise PreconditionError(f"j={j} outside 0..{k // 2}")
    m = n // 2
    return sum(_binom(m, l) * _binom(l, j) * _binom(m - l, k - l - j) for l in range(k + 1))


def nm2_level_count_closed(n: int, k: int, j: int) -> int:
    """Same count as :func:`nm2_level_count`: pick the j full pairs, then k-2j half pairs."""
    _check_nm2(n, k)
    if not 0 <= j <= k // 2:
        raise PreconditionError(f"j={j} outside 0..{k // 2}")
    m = n // 2
    return _binom(m, j) * _binom(m - j, k - 2 * j) * 2 ** (k - 2 * j)


# ---------------------------------------------------------------------------
# stars
# ---------------------------------------------------------------------------

def star_kpg_connectivity(beams: int, k: int) -> int:
    if beams < 1 or not 1 <= k <= beams:
        raise PreconditionError(f"star needs 1 <= k <= beams, got beams={beams}, k={k}")
    if 2 * k <= beams + 1:
        return k
    return beams + 1 - k


def star_kpg_diameter(beams: int, k: int) -> int:
    if k < 1 or 2 * k > beams - 1:
        raise PreconditionError(f"star diameter formula needs 1 <= k <= (beams-1)/2, got beams={beams}, k={k}")
    return 2 * k


def star_kpg_profile(beams: int, k: int) -> Dict[str, Dict[str, int]]:
    """Config classes of the star: the centre occupied or free."""
    if beams < 1 or not 1 <= k <= beams:
        raise PreconditionError(f"star needs 1 <= k <= beams, got beams={beams}, k={k}")
    return {
        "with_centre": {"count": comb(beams, k - 1), "degree": beams + 1 - k},
        "without_centre": {"count": comb(beams, k), "degree": k},
    }


# ---------------------------------------------------------------------------
# two particles: weighted subset maximum
# ---------------------------------------------------------------------------

def _below_threshold(n: int, d: int) -> bool:
    """d <= (n-1 + sqrt((n-1)(n+3)))/2, in integers."""
    gap = 2 * d - (n - 1)
    return gap < 0 or gap * gap <= (n - 1) * (n + 3)


def weighted_subset_oracle(n: int, d: int) -> int:
    """max x+y with d*x + (d+1)*y <= T/2 by enumeration over x."""
    low_count = n * d // 2  # adjacent pairs
    high_count = n * (n - 1 - d) // 2  # non-adjacent pairs
    twice_budget = d * low_count + (d + 1) * high_count  # T, compared against 2*(weight)
    best = 0
    for x in range(low_count + 1):
        rest = twice_budget - 2 * d * x
        if rest < 0:
            break
        y = min(high_count, rest // (2 * (d + 1)))
        best = max(best, x + y)
    return best


def weighted_subset_max(n: int, d: int) -> WeightedSubsetResult:
    """Largest set of two-particle configs of a d-regular graph with weight at most half the total.

    Configs on an edge weigh d, the others d+1. The closed form takes
    n*d/2 + y_low below the threshold on d and y_high above it; the
    corrected rule switches on the sign of y_low instead.
    """
    if n < 3:
        raise PreconditionError(f"n must be >= 3, got {n}")
    if not 1 <= d <= n - 1:
        raise PreconditionError(f"d={d} outside 1..{n - 1}")
    if n * d % 2:
        raise PreconditionError(f"no {d}-regular graph on {n} vertices (n*d odd)")

    y_low = (n * (n - 1 - d) * (d + 1) - d * d * n) // (4 * (d + 1))
    y_high = ((d + 1) * n * (n - 1 - d) + d * d * n) // (4 * d)
    low_value = n * d // 2 + y_low

    case = "low-branch" if _below_threshold(n, d) else "high-branch"
    closed = low_value if case == "low-branch" else y_high
    corrected_case = "low-branch" if y_low >= 0 else "high-branch"
    corrected = low_value if corrected_case == "low-branch" else y_high

    result = WeightedSubsetResult(
        max_size=weighted_subset_oracle(n, d),
        case_used=case,
        y_star_low=y_low,
        y_star_high=y_high,
        threshold=0.5 * (n - 1 + math.sqrt((n - 1) * (n + 3))),
        closed_form=closed,
        corrected_case=corrected_case,
        corrected_form=corrected,
    )
    if not result.agree:
        logger.debug(f"weighted subset n={n} d={d}: closed form {closed}, optimum {result.max_size}")
    return result
