"""配置管理模块"""

from .settings import Settings

__all__ = ["Settings"]
