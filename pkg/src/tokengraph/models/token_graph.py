"""Token graph (k-particle graph) types."""

from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from .graph import SimpleGraph
from ..exceptions import PreconditionError
from ..utils.bitset import bits_to_list, format_subset, popcount, rank_subset, unrank_subset


@dataclass(frozen=True, order=True)
class Config:
    """A k-subset of vertices: positions of k indistinguishable particles."""

    bits: int
    k: int = field(compare=False)

    def __post_init__(self):
        if popcount(self.bits) != self.k:
            raise PreconditionError(f"mask {self.bits:#x} does not hold {self.k} particles")

    @classmethod
    def of(cls, vertices) -> "Config":
        mask = 0
        for v in vertices:
            mask |= 1 << v
        return cls(mask, popcount(mask))

    @property
    def vertices(self) -> List[int]:
        return bits_to_list(self.bits)

    def complement(self, n: int) -> "Config":
        return Config(((1 << n) - 1) & ~self.bits, n - self.k)

    def __str__(self) -> str:
        return format_subset(self.bits)


@dataclass(frozen=True)
class TokenGraph:
    """The k-particle graph of ``underlying``.

    ``masks`` holds the configurations in rank order; ``adjacency[i]`` is the
    sorted tuple of neighbour indices of ``masks[i]``.
    """

    underlying: SimpleGraph
    k: int
    masks: Tuple[int, ...]
    adjacency: Tuple[Tuple[int, ...], ...]
    degrees: Tuple[int, ...]
    index: Dict[int, int] = field(repr=False, compare=False)

    @property
    def n(self) -> int:
        return self.underlying.n

    @property
    def order(self) -> int:
        return len(self.masks)

    @property
    def size(self) -> int:
        return sum(self.degrees) // 2

    @property
    def configs(self) -> List[Config]:
        return [Config(m, self.k) for m in self.masks]

    def config(self, i: int) -> Config:
        if not 0 <= i < self.order:
            raise PreconditionError(f"config index {i} outside 0..{self.order - 1}")
        return Config(unrank_subset(i, self.k), self.k)

    def index_of(self, config) -> int:
        """Position of ``config`` in ``masks``, which is its combinatorial rank."""
        mask = config.bits if isinstance(config, Config) else int(config)
        if mask < 0:
            raise PreconditionError(f"negative config mask {mask}")
        if mask >> self.n or popcount(mask) != self.k:
            raise PreconditionError(f"{format_subset(mask)} is not a vertex of this token graph")
        return rank_subset(mask)

    def edges(self) -> List[Tuple[int, int]]:
        """Index pairs ``(i, j)``, ``i < j``, lexicographic."""
        return [(i, j) for i, nbrs in enumerate(self.adjacency) for j in nbrs if j > i]

    def to_dict(self) -> Dict:
        return {
            "n": self.n,
            "k": self.k,
            "configs": list(self.masks),
            "edges": [list(e) for e in self.edges()],
            "degrees": list(self.degrees),
        }


@dataclass(frozen=True)
class DualMap:
    """Complementation ``v -> V minus v`` from a token graph onto its (n-k) dual."""

    mapping: Tuple[int, ...]  # index in source -> index in dual
    dual: TokenGraph
    verified: bool
