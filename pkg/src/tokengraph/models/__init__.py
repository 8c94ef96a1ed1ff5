"""数据模型模块"""

from .chain import (
    BoundaryPartition,
    ChainReport,
    ChainStructure,
    LumpabilityResult,
    Partition,
    StochasticMatrix,
)
from .graph import BipartiteBoundary, BoundaryCertificate, SimpleGraph
from .marked import MarkedConfig, MarkedTokenGraph
from .report import (
    CheckResult,
    ConnectivityReport,
    DegreeProfile,
    DiameterReport,
    EdgeCountForms,
    Finding,
    StructureProfile,
    WeightedSubsetResult,
)
from .token_graph import Config, DualMap, TokenGraph

__all__ = [
    "BipartiteBoundary",
    "BoundaryCertificate",
    "BoundaryPartition",
    "ChainReport",
    "ChainStructure",
    "CheckResult",
    "Config",
    "ConnectivityReport",
    "DegreeProfile",
    "DiameterReport",
    "DualMap",
    "EdgeCountForms",
    "Finding",
    "LumpabilityResult",
    "MarkedConfig",
    "MarkedTokenGraph",
    "Partition",
    "SimpleGraph",
    "StochasticMatrix",
    "StructureProfile",
    "TokenGraph",
    "WeightedSubsetResult",
]
