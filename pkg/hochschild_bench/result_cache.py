"""
结果缓存 - 按（输入文件内容哈希, 命令, 参数）缓存输出的报告

缓存的是 emit_report 的字节和退出码，命中时原样返回，与不用缓存的运行逐字节相同。
条目格式：第一行 "exit=<退出码>"，其后是报告字节。
"""
import hashlib
import json
import os
from pathlib import Path
from typing import Any, Dict, Optional, Sequence, Tuple

from .logger import get_logger

logger = get_logger()

CACHE_VERSION = 1


class ResultCache:
    """本地目录里的报告缓存"""

    def __init__(self, cache_dir: str, enabled: bool = True):
        """
        Args:
            cache_dir: 缓存目录（第一次写入时创建）
            enabled: False 时 get 总是未命中，put 什么也不做
        """
        self.cache_dir = Path(cache_dir)
        self.enabled = enabled
        self.hits = 0
        self.misses = 0

    @staticmethod
    def make_key(paths: Sequence, command: str, flags: Dict[str, Any]) -> str:
        """输入文件按内容参与哈希，文件名和位置不影响键"""
        digest = hashlib.sha256()
        digest.update(f"v{CACHE_VERSION}\0{command}\0".encode('utf-8'))
        digest.update(json.dumps(flags, sort_keys=True, default=str).encode('utf-8'))
        for path in paths:
            digest.update(b'\0')
            digest.update(Path(path).read_bytes())
        return digest.hexdigest()

    def _entry(self, key: str) -> Path:
        return self.cache_dir / key[:2] / f"{key}.out"

    def get(self, key: str) -> Optional[Tuple[int, bytes]]:
        """命中时返回（退出码, 报告字节）"""
        if not self.enabled:
            return None
        entry = self._entry(key)
        if entry.exists():
            head, _, payload = entry.read_bytes().partition(b"\n")
            if head.startswith(b"exit="):
                self.hits += 1
                logger.info(f"[缓存] 命中 {key[:12]}")
                return int(head[5:]), payload
            logger.warning(f"[缓存] 条目 {entry} 格式不对，忽略")
        self.misses += 1
        return None

    def put(self, key: str, payload: bytes, status: int = 0) -> None:
        if not self.enabled:
            return
        entry = self._entry(key)
        entry.parent.mkdir(parents=True, exist_ok=True)
        # 先写临时文件再改名，读者看不到写了一半的条目
        tmp = entry.with_suffix(f".{os.getpid()}.tmp")
        tmp.write_bytes(f"exit={status}\n".encode("ascii") + payload)
        os.replace(tmp, entry)
        logger.info(f"[缓存] 写入 {key[:12]} ({len(payload)} 字节)")

    def clear(self) -> int:
        """删除全部条目，返回删除的个数"""
        removed = 0
        if self.cache_dir.exists():
            for entry in self.cache_dir.glob('*/*.out'):
                entry.unlink()
                removed += 1
        return removed
