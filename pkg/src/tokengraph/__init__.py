"""tokengraph - token graphs of simple graphs

Builds k-particle (token) graphs, checks their structural identities against
exhaustive oracles, and analyses the exclusion process that moves particles
along them.
"""

__version__ = "0.1.0"

from .models import SimpleGraph, TokenGraph
from .services import ExportService, VerificationService
from .services.graph_core import from_spec, generate
from .services.kpg import build, johnson

__all__ = [
    "ExportService",
    "SimpleGraph",
    "TokenGraph",
    "VerificationService",
    "build",
    "from_spec",
    "generate",
    "johnson",
]
