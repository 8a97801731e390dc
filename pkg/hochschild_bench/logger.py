"""
日志配置模块

库内各模块统一通过 get_logger() 取得记录器，日志只写入文件，不输出到控制台
（控制台输出由 workbench.py 的 log() 负责）。
"""
import logging
from pathlib import Path
from datetime import datetime
from typing import Optional

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
LOG_DATEFMT = '%Y-%m-%d %H:%M:%S'


def setup_logger(name: str = "hochschild_bench", log_dir: str = "logs",
                 log_file_path: Optional[str] = None) -> logging.Logger:
    """
    配置并返回日志记录器

    Args:
        name: 日志记录器名称
        log_dir: 日志文件目录（当 log_file_path 为 None 时使用）
        log_file_path: 指定的日志文件路径（如果提供，则直接使用，通常是 workbench 的运行日志）

    Returns:
        配置好的 Logger 实例
    """
    if log_file_path:
        log_file = Path(log_file_path)
        log_file.parent.mkdir(parents=True, exist_ok=True)
    else:
        log_path = Path(log_dir)
        log_path.mkdir(parents=True, exist_ok=True)
        # 每次运行一个新文件
        log_file = log_path / f"{name}_{datetime.now().strftime('%Y%m%d_%H%M%S')}.log"

    logger = logging.getLogger(name)
    logger.setLevel(logging.DEBUG)
    logger.propagate = False

    # 重新配置时清掉旧 handler，避免重复写入
    logger.handlers.clear()

    # 'a' 模式：workbench 可能已经往同一个文件写了运行头
    file_handler = logging.FileHandler(log_file, mode='a', encoding='utf-8')
    file_handler.setLevel(logging.DEBUG)
    file_handler.setFormatter(logging.Formatter(LOG_FORMAT, datefmt=LOG_DATEFMT))
    logger.addHandler(file_handler)

    return logger


# 全局默认 logger
_default_logger: Optional[logging.Logger] = None


def get_logger() -> logging.Logger:
    """
    获取默认的全局 logger

    第一次调用之前若没有人设置过 _default_logger，则返回一个只挂 NullHandler 的
    记录器，这样在测试或被当作库导入时不会在工作目录里生成日志文件。

    Returns:
        Logger 实例
    """
    global _default_logger
    if _default_logger is None:
        _default_logger = logging.getLogger("hochschild_bench")
        if not _default_logger.handlers:
            _default_logger.addHandler(logging.NullHandler())
        _default_logger.propagate = False
    return _default_logger
