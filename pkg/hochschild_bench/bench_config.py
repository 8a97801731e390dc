"""
运行配置 - 工作目录下可选的 .hochschild_bench.json

命令行参数覆盖文件里的值；文件缺失或无法解析时使用内置默认值。
"""
import json
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, Optional

from .errors import SchemaError
from .logger import get_logger

logger = get_logger()

CONFIG_FILE_NAME = '.hochschild_bench.json'
CONFIG_KEYS = ('window', 'p_cap', 'samples', 'seed', 'format', 'cache_dir', 'log_dir', 'use_cache',
               'max_stable_level')
FORMATS = ('text', 'json', 'csv')


@dataclass(frozen=True)
class BenchConfig:
    """合并后的配置"""
    window_min: int = 0
    window_max: int = 8
    p_cap: Optional[int] = None
    samples: int = 50
    seed: int = 0
    format: str = 'text'
    cache_dir: str = '.hochschild_cache'
    log_dir: str = 'logs'
    use_cache: bool = True
    max_stable_level: int = 12
    # 命令行显式给出的窗口；未给出时由命令的默认窗口决定
    explicit_window: bool = field(default=False, compare=False)

    def override(self, **values: Any) -> 'BenchConfig':
        """用非 None 的值覆盖，返回新配置"""
        changes = {k: v for k, v in values.items() if v is not None}
        return replace(self, **changes)

    def echo(self) -> Dict[str, Any]:
        """写进报告的配置回显（不含本地路径）"""
        return {
            'window': [self.window_min, self.window_max],
            'p_cap': self.p_cap,
            'samples': self.samples,
            'seed': self.seed,
            'max_stable_level': self.max_stable_level,
        }


def _get_default_config() -> Dict[str, Any]:
    """获取默认配置（内置）"""
    return {
        'window': {'min': 0, 'max': 8},
        'p_cap': None,
        'samples': 50,
        'seed': 0,
        'format': 'text',
        'cache_dir': '.hochschild_cache',
        'log_dir': 'logs',
        'use_cache': True,
        'max_stable_level': 12,
    }


def _require_int(data: Dict[str, Any], key: str, allow_none: bool = False) -> Optional[int]:
    value = data[key]
    if value is None and allow_none:
        return None
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(key, f"{key} 必须是整数: {value!r}")
    return value


def config_from_dict(data: Dict[str, Any]) -> BenchConfig:
    """
    把配置字典合并到默认值上

    Raises:
        SchemaError: 未知字段或类型不对
    """
    unknown = [key for key in data if key not in CONFIG_KEYS]
    if unknown:
        raise SchemaError(unknown[0], f"未知配置项: {unknown[0]}，可用: {', '.join(CONFIG_KEYS)}")
    merged = _get_default_config()
    merged.update(data)

    window = merged['window']
    if not isinstance(window, dict) or set(window) - {'min', 'max'}:
        raise SchemaError('window', "window 应写成 {\"min\": .., \"max\": ..}")
    window = {**_get_default_config()['window'], **window}
    window_min = _require_int(window, 'min')
    window_max = _require_int(window, 'max')
    if window_min > window_max:
        raise SchemaError('window', f"窗口下界 {window_min} 大于上界 {window_max}")
    if merged['format'] not in FORMATS:
        raise SchemaError('format', f"format 只能是 {FORMATS}: {merged['format']}")
    if not isinstance(merged['use_cache'], bool):
        raise SchemaError('use_cache', "use_cache 必须是 true / false")

    return BenchConfig(
        window_min=window_min,
        window_max=window_max,
        p_cap=_require_int(merged, 'p_cap', allow_none=True),
        samples=_require_int(merged, 'samples'),
        seed=_require_int(merged, 'seed'),
        format=merged['format'],
        cache_dir=str(merged['cache_dir']),
        log_dir=str(merged['log_dir']),
        use_cache=merged['use_cache'],
        max_stable_level=_require_int(merged, 'max_stable_level'),
        explicit_window='window' in data,
    )


def load_config(config_path: Optional[str] = None) -> BenchConfig:
    """
    加载配置文件

    Args:
        config_path: 配置文件路径，为 None 时尝试工作目录下的 .hochschild_bench.json
    """
    if config_path is None:
        default_config_path = Path(CONFIG_FILE_NAME)
        if default_config_path.exists():
            config_path = str(default_config_path)

    if config_path and Path(config_path).exists():
        try:
            with open(config_path, 'r', encoding='utf-8') as f:
                data = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            logger.warning(f"无法读取配置 {config_path}: {e}，使用默认配置")
            return config_from_dict({})
        if not isinstance(data, dict):
            raise SchemaError('<root>', "配置文件顶层必须是 JSON 对象")
        logger.info(f"加载配置: {config_path}")
        return config_from_dict(data)

    return config_from_dict({})


_config: Optional[BenchConfig] = None


def get_config() -> BenchConfig:
    """进程内的当前配置；第一次调用时从文件加载"""
    global _config
    if _config is None:
        _config = load_config()
    return _config


def set_config(config: Optional[BenchConfig]) -> None:
    """替换当前配置；传 None 时下次 get_config() 重新加载"""
    global _config
    _config = config
