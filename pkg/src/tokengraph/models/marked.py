"""Marked (distinguishable-particle) token graph types."""

from dataclasses import dataclass
from typing import Dict, List, Tuple

from .graph import SimpleGraph
from ..exceptions import PreconditionError


@dataclass(frozen=True, order=True)
class MarkedConfig:
    """Ordered tuple of pairwise distinct vertex labels."""

    positions: Tuple[int, ...]

    def __post_init__(self):
        if len(set(self.positions)) != len(self.positions):
            raise PreconditionError(f"repeated coordinates in {self.positions}")

    @property
    def k(self) -> int:
        return len(self.positions)

    @property
    def support(self) -> int:
        mask = 0
        for v in self.positions:
            mask |= 1 << v
        return mask

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.positions)) + ")"


@dataclass(frozen=True)
class MarkedTokenGraph:
    underlying: SimpleGraph
    k: int
    configs: Tuple[Tuple[int, ...], ...]  # lexicographic
    adjacency: Tuple[Tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return len(self.configs)

    @property
    def size(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    @property
    def degrees(self) -> List[int]:
        return [len(a) for a in self.adjacency]

    def edges(self) -> List[Tuple[int, int]]:
        return [(i, j) for i, nbrs in enumerate(self.adjacency) for j in nbrs if j > i]

    def to_dict(self) -> Dict:
        return {
            "n": self.underlying.n,
            "k": self.k,
            "configs": [list(c) for c in self.configs],
            "edges": [list(e) for e in self.edges()],
            "degrees": self.degrees,
        }
