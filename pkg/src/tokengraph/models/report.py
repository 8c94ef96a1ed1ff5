"""Result records for structural analyses and verification findings."""

from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional


@dataclass
class StructureProfile:
    connected: bool
    bipartite: bool
    regular_degree: Optional[int]
    diameter: Optional[int]

    def to_dict(self) -> Dict:
        return asdict(self)


@dataclass
class DegreeProfile:
    degree_set: List[int]  # sorted distinct degrees
    level_counts: Dict[int, int]  # degree -> number of configs

    @property
    def total(self) -> int:
        return sum(self.level_counts.values())

    def to_dict(self) -> Dict:
        return {
            "degree_set": self.degree_set,
            "level_counts": {str(d): c for d, c in sorted(self.level_counts.items())},
        }


@dataclass
class DiameterReport:
    min_outer_boundary: int
    witness: int  # config mask attaining the minimum
    delta2k: int
    formula_diameter: int
    bfs_diameter: int

    @property
    def agree(self) -> bool:
        return self.formula_diameter == self.bfs_diameter

    def to_dict(self) -> Dict:
        data = asdict(self)
        data["agree"] = self.agree
        return data


@dataclass
class ConnectivityReport:
    claimed: int  # min degree of the token graph
    exact: Optional[int] = None  # max-flow oracle, when under cap

    @property
    def agree(self) -> Optional[bool]:
        return None if self.exact is None else self.exact == self.claimed

    def to_dict(self) -> Dict:
        return {"claimed": self.claimed, "exact": self.exact, "agree": self.agree}


@dataclass
class WeightedSubsetResult:
    max_size: int  # integer-program optimum
    case_used: str  # "low-branch" | "high-branch" by the threshold rule
    y_star_low: int
    y_star_high: int
    threshold: float
    closed_form: int  # two-branch value chosen by the threshold rule
    corrected_case: str  # branch chosen by the sign of y_star_low
    corrected_form: int

    @property
    def agree(self) -> bool:
        return self.closed_form == self.max_size

    def to_dict(self) -> Dict:
        data = asdict(self)
        data["agree"] = self.agree
        return data


@dataclass
class CheckResult:
    """Outcome of a structural identity check with a short explanation."""

    ok: bool
    detail: str = ""
    data: Dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok


PASS = "pass"
FAIL = "fail"
REPORTED = "reported"


@dataclass
class Finding:
    """One verification record."""

    seq: int
    check: str
    inputs: Dict[str, Any]
    expected: Any
    actual: Any
    status: str  # pass | fail | reported

    def to_dict(self) -> Dict:
        return asdict(self)


@dataclass
class EdgeCountForms:
    """Closed forms for the edge count of the token graph of a d-regular graph."""

    short_form: int
    sum_form: int
    vs_underlying: int  # coefficient of |E|

    @property
    def agree(self) -> bool:
        return self.short_form == self.sum_form

    def to_dict(self) -> Dict:
        data = asdict(self)
        data["agree"] = self.agree
        return data
