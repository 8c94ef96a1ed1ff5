"""配置管理模块

Caps, tolerances and logging options. Values come from defaults, then the
environment (optionally a ``.env`` file), then CLI flags.
"""

import logging
import os
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Optional

from ..exceptions import ConfigurationError

# 尝试加载 .env 文件
try:
    from dotenv import load_dotenv
    load_dotenv()
except ImportError:
    # 如果没有安装 python-dotenv，跳过
    pass

logger = logging.getLogger(__name__)

_INT_FIELDS = (
    "max_configs",
    "oracle_cap",
    "render_cap",
    "automorphism_cap",
    "clique_oracle_cap",
    "walk_lmax",
    "seed",
)


@dataclass
class Settings:
    """应用配置类"""

    # 枚举上限
    max_configs: int = 200_000  # C(n,k) limit for building a token graph
    oracle_cap: int = 500  # max-flow / exact-rational oracles run up to this many configs
    render_cap: int = 2000  # DOT export limit
    automorphism_cap: int = 10  # brute-force Aut(L) only for n <= this
    clique_oracle_cap: int = 5000  # brute-force clique counts in the token graph
    walk_lmax: int = 8  # closed-walk lengths checked by verify

    # 数值容差
    tol: float = 1e-10
    seed: int = 0  # only permutes corpus order

    # 输出与日志
    data_dir: Path = Path("data")
    log_dir: Optional[Path] = None  # None: console only
    log_level: str = "INFO"

    @classmethod
    def from_env(cls) -> "Settings":
        """从环境变量加载配置

        Unparseable values are skipped with a warning and the default stays.

        Returns:
            配置实例
        """
        values: dict = {}
        for name in _INT_FIELDS:
            raw = os.getenv(f"TOKENGRAPH_{name.upper()}")
            if raw:
                try:
                    values[name] = int(raw)
                except ValueError:
                    logger.warning(f"Ignoring TOKENGRAPH_{name.upper()}={raw!r}")

        values.update(_parse_caps(os.getenv("TOKENGRAPH_CAPS", "")))

        tol = os.getenv("TOKENGRAPH_TOL")
        if tol:
            try:
                values["tol"] = float(tol)
            except ValueError:
                logger.warning(f"Ignoring TOKENGRAPH_TOL={tol!r}")

        log_dir = os.getenv("TOKENGRAPH_LOG_DIR")
        return cls(
            data_dir=Path(os.getenv("TOKENGRAPH_DATA_DIR", "data")),
            log_dir=Path(log_dir) if log_dir else None,
            log_level=os.getenv("TOKENGRAPH_LOG_LEVEL", "INFO"),
            **values,
        )

    def with_overrides(self, **overrides) -> "Settings":
        """Return a copy with the non-None overrides applied (CLI flags)."""
        known = {f.name for f in fields(self)}
        clean = {k: v for k, v in overrides.items() if v is not None and k in known}
        return replace(self, **clean)

    def validate(self) -> "Settings":
        for name in ("max_configs", "oracle_cap", "render_cap", "automorphism_cap",
                     "clique_oracle_cap", "walk_lmax"):
            if getattr(self, name) <= 0:
                raise ConfigurationError(f"{name} must be positive, got {getattr(self, name)}")
        if not (0 < self.tol <= 1e-6):
            raise ConfigurationError(f"tol must lie in (0, 1e-6], got {self.tol}")
        if not isinstance(logging.getLevelName(str(self.log_level).upper()), int):
            raise ConfigurationError(f"unknown log level {self.log_level!r}")
        return self

    def ensure_dirs(self) -> None:
        """确保必要的目录存在"""
        self.data_dir.mkdir(parents=True, exist_ok=True)
        if self.log_dir is not None:
            self.log_dir.mkdir(parents=True, exist_ok=True)


def _parse_caps(text: str) -> dict:
    """Parse ``max_configs=…,oracle_cap=…`` from TOKENGRAPH_CAPS."""
    caps: dict = {}
    for item in filter(None, (part.strip() for part in text.split(","))):
        key, sep, raw = item.partition("=")
        key = key.strip()
        if not sep or key not in _INT_FIELDS:
            logger.warning(f"Ignoring TOKENGRAPH_CAPS entry {item!r}")
            continue
        try:
            caps[key] = int(raw)
        except ValueError:
            logger.warning(f"Ignoring TOKENGRAPH_CAPS entry {item!r}")
    return caps
