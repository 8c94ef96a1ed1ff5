"""Exclusion-chain types."""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .graph import BoundaryCertificate


@dataclass(frozen=True)
class StochasticMatrix:
    """Sparse row-stochastic matrix with exact rational entries.

    ``rows[i]`` lists ``(column, probability)`` pairs sorted by column.
    """

    size: int
    rows: Tuple[Tuple[Tuple[int, Fraction], ...], ...]

    def entry(self, i: int, j: int) -> Fraction:
        for col, p in self.rows[i]:
            if col == j:
                return p
        return Fraction(0)

    def row_sum(self, i: int) -> Fraction:
        return sum((p for _, p in self.rows[i]), Fraction(0))

    def support(self, i: int) -> List[int]:
        return [col for col, p in self.rows[i] if p]

    def column(self, j: int) -> List[Fraction]:
        return [p for i in range(self.size) for col, p in self.rows[i] if col == j]

    def to_dense(self):
        """Float numpy array."""
        import numpy as np

        dense = np.zeros((self.size, self.size))
        for i, row in enumerate(self.rows):
            for col, p in row:
                dense[i, col] = float(p)
        return dense

    def to_fraction_rows(self) -> List[List[Fraction]]:
        dense = [[Fraction(0)] * self.size for _ in range(self.size)]
        for i, row in enumerate(self.rows):
            for col, p in row:
                dense[i][col] = p
        return dense


@dataclass(frozen=True)
class Partition:
    """Partition of the configuration indices into numbered classes.

    Class ids are assigned in order of first appearance along the rank order,
    so ``representatives`` is increasing.
    """

    class_of: Tuple[int, ...]
    representatives: Tuple[int, ...]
    certificates: Tuple[Optional[BoundaryCertificate], ...] = ()
    kind: str = "boundary"

    @property
    def class_count(self) -> int:
        return len(self.representatives)

    def members(self) -> List[List[int]]:
        groups: List[List[int]] = [[] for _ in self.representatives]
        for i, c in enumerate(self.class_of):
            groups[c].append(i)
        return groups

    def same_as(self, other: "Partition") -> bool:
        return self.class_of == other.class_of


@dataclass(frozen=True)
class ChainStructure:
    irreducible: bool
    period: int  # of the class containing state 0 when reducible


# the lumping partition by boundary isomorphism
BoundaryPartition = Partition


@dataclass
class LumpabilityResult:
    ok: bool
    max_dev: Fraction
    worst: Optional[Tuple[int, int, int]] = None  # (config, other config, target class)


@dataclass
class ChainReport:
    irreducible: bool
    period: int
    stationary: List[float]
    exact_stationary: Optional[List[Fraction]] = None
    residual: float = 0.0
    converges: bool = False  # irreducible and aperiodic
    proportional_to_degree: Optional[bool] = None
    classes: List[Dict] = field(default_factory=list)
    lumpable: Optional[bool] = None
    orbit_lumpable: Optional[bool] = None
    lumped: Optional[List[List[str]]] = None

    def to_dict(self) -> Dict:
        return {
            "irreducible": self.irreducible,
            "period": self.period,
            "converges": self.converges,
            "residual": self.residual,
            "proportional_to_degree": self.proportional_to_degree,
            "classes": self.classes,
            "lumpable": self.lumpable,
            "orbit_lumpable": self.orbit_lumpable,
            "lumped": self.lumped,
        }
