"""工具函数模块"""

from .bitset import format_subset, iter_bits, iter_k_subsets, popcount, rank_subset, unrank_subset
from .logger import setup_logger

__all__ = [
    "setup_logger",
    "popcount",
    "iter_bits",
    "iter_k_subsets",
    "rank_subset",
    "unrank_subset",
    "format_subset",
]
