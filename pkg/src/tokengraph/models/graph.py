"""Underlying graph and boundary types."""

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

from ..exceptions import PreconditionError
from ..utils.bitset import full_mask, iter_bits, popcount

MAX_VERTICES = 64


@dataclass(frozen=True)
class SimpleGraph:
    """Finite simple graph on vertices ``0..n-1`` with bitmask adjacency."""

    n: int
    adj: Tuple[int, ...]  # adj[v] = neighbour mask of v
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.n < 0 or self.n > MAX_VERTICES:
            raise PreconditionError(f"vertex count {self.n} outside 0..{MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise PreconditionError("adjacency length does not match n")
        universe = full_mask(self.n)
        for v, nb in enumerate(self.adj):
            if nb & ~universe:
                raise PreconditionError(f"vertex {v} has a neighbour outside 0..{self.n - 1}")
            if nb >> v & 1:
                raise PreconditionError(f"self-loop at vertex {v}")
            for w in iter_bits(nb):
                if not self.adj[w] >> v & 1:
                    raise PreconditionError(f"adjacency not symmetric at ({v}, {w})")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]], name: str = "") -> "SimpleGraph":
        if n < 0 or n > MAX_VERTICES:
            raise PreconditionError(f"vertex count {n} outside 0..{MAX_VERTICES}")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise PreconditionError(f"edge ({u}, {v}) has a label outside 0..{n - 1}")
            if u == v:
                raise PreconditionError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj), name)

    @property
    def vertex_mask(self) -> int:
        return full_mask(self.n)

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    @property
    def degrees(self) -> List[int]:
        return [popcount(nb) for nb in self.adj]

    def neighbors(self, v: int) -> List[int]:
        return list(iter_bits(self.adj[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> List[Tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in iter_bits(self.adj[u]) if v > u]

    @property
    def edge_count(self) -> int:
        return sum(self.degrees) // 2

    @property
    def regular_degree(self) -> Optional[int]:
        degs = set(self.degrees)
        return degs.pop() if len(degs) == 1 else None

    def induced_edge_count(self, mask: int) -> int:
        return sum(popcount(self.adj[v] & mask) for v in iter_bits(mask)) // 2

    def boundary_edge_count(self, mask: int) -> int:
        outside = self.vertex_mask & ~mask
        return sum(popcount(self.adj[v] & outside) for v in iter_bits(mask))

    def to_dict(self) -> Dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges()]}


@dataclass(frozen=True)
class BipartiteBoundary:
    """Edges of the source graph crossing between an occupied set and its complement."""

    left: int  # occupied set
    right: int  # complement
    cross_edges: Tuple[Tuple[int, int], ...]  # (left vertex, right vertex), sorted
    n: int

    @property
    def size(self) -> int:
        return len(self.cross_edges)


@dataclass(frozen=True)
class BoundaryCertificate:
    """Part-preserving canonical form of a :class:`BipartiteBoundary`."""

    data: bytes

    def hex(self) -> str:
        return self.data.hex()

    def __lt__(self, other: "BoundaryCertificate") -> bool:
        return self.data < other.data
