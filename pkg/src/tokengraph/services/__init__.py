"""业务服务模块"""

from . import (
    analysis,
    canonical,
    corpus,
    exclusion_chain,
    graph_core,
    kpg,
    marked_kpg,
    special_cases,
)
from .export_service import ExportService
from .verification import VerificationService

__all__ = [
    "ExportService",
    "VerificationService",
    "analysis",
    "canonical",
    "corpus",
    "exclusion_chain",
    "graph_core",
    "kpg",
    "marked_kpg",
    "special_cases",
]
