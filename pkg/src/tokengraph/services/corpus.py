"""Shipped corpus of small underlying graphs."""

import itertools
import logging
import random
from math import gcd
from typing import List, Optional

from ..exceptions import PreconditionError
from ..models.graph import SimpleGraph
from . import canonical, graph_core

logger = logging.getLogger(__name__)


def regular_circulants(nmax: int, nmin: int = 3) -> List[str]:
    """Generator specs of connected circulants on nmin..nmax vertices, one per isomorphism type.

    Each circulant is regular; complete graphs appear as the full jump set.
    """
    if nmin < 3 or nmax < nmin:
        raise PreconditionError(f"need 3 <= nmin <= nmax, got {nmin}..{nmax}")
    specs = []
    for n in range(nmin, nmax + 1):
        seen = set()
        jumps_all = range(1, n // 2 + 1)
        for size in range(1, len(jumps_all) + 1):
            for jumps in itertools.combinations(jumps_all, size):
                if gcd(n, *jumps) != 1:
                    continue
                spec = f"circulant:{n}," + ",".join(map(str, jumps))
                form = canonical.canonical_form(graph_core.from_spec(spec))
                if form not in seen:
                    seen.add(form)
                    specs.append(spec)
    return specs


def default_corpus(seed: Optional[int] = None) -> List[str]:
    """Named generator specs of the shipped corpus, all with at most 10 vertices.

    ``seed`` only shuffles the order; None or 0 keeps the listed order.
    """
    specs = [f"cycle:{n}" for n in range(3, 11)]
    specs += [f"star:{b}" for b in range(1, 7)]
    specs += [f"complete:{n}" for n in range(2, 8)]
    specs += [f"path:{n}" for n in range(2, 7)]
    specs += [f"cocktail_party:{m}" for m in range(2, 6)]
    specs += ["cube", "petersen", "cubic8"]
    specs += [s for s in regular_circulants(10, 5) if s.count(",") > 1]
    unique = list(dict.fromkeys(specs))
    if seed:
        random.Random(seed).shuffle(unique)
    logger.debug(f"corpus of {len(unique)} graphs")
    return unique


def load_corpus(seed: Optional[int] = None) -> List[SimpleGraph]:
    return [graph_core.from_spec(spec) for spec in default_corpus(seed)]
