"""日志配置模块"""

import logging
import sys
from datetime import datetime
from pathlib import Path
from typing import Optional, Union


class UnicodeSafeFormatter(logging.Formatter):
    """Falls back to ASCII when the console cannot encode set symbols."""

    def format(self, record):
        try:
            return super().format(record)
        except UnicodeEncodeError:
            record.msg = str(record.msg).encode("ascii", "replace").decode("ascii")
            return super().format(record)


def setup_logger(
    name: str = "tokengraph",
    level: Union[int, str] = logging.INFO,
    log_dir: Optional[Union[str, Path]] = None,
) -> logging.Logger:
    """设置日志记录器

    Console output goes to stderr so stdout carries only report data.

    Args:
        name: 日志记录器名称
        level: 日志级别
        log_dir: 日志文件目录，None 则不写文件

    Returns:
        配置好的日志记录器
    """
    if isinstance(level, str):
        level = level.upper()
    logger = logging.getLogger(name)
    logger.setLevel(level)

    # 避免重复添加处理器
    if logger.handlers:
        return logger

    formatter = UnicodeSafeFormatter(
        "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
    )

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(level)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    if log_dir is not None:
        log_path = Path(log_dir)
        log_path.mkdir(parents=True, exist_ok=True)
        log_file = log_path / f"{name}_{datetime.now().strftime('%Y%m%d')}.log"
        file_handler = logging.FileHandler(log_file, encoding="utf-8")
        file_handler.setLevel(level)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    logger.propagate = False
    return logger
