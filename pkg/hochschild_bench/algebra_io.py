"""
代数文件与同态文件的读写

AlgebraFile（JSON）格式::

    {
      "name": "S2",
      "degree_k": 2,
      "basis": [["1", 0], ["x", 2]],
      "unit": "1",
      "products": [["x", "x", {}]],
      "differential": {},
      "pairing": [["1", "x", "1"], ["x", "1", "1"]]
    }

系数一律写成精确有理数字符串 "p/q" 或整数；浮点数拒绝。未列出的乘积为零（与单位元
的乘积遵循单位律），未列出的微分与配对为零。

同态文件格式::

    {"source": "S3.json", "target": "S3.json", "direction": "forward",
     "entries": [{"from": "x", "to": [{"basis": "x", "coeff": "2"}]}]}

source / target 是相对同态文件所在目录的路径。
"""
import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from .errors import ParseError, SchemaError
from .frobenius_algebra import AlgebraDescription, FrobeniusAlgebra, validate
from .logger import get_logger
from .rational_linalg import to_scalar

logger = get_logger()

ALGEBRA_KEYS = ('name', 'degree_k', 'basis', 'unit', 'products', 'differential', 'pairing')
MORPHISM_KEYS = ('source', 'target', 'entries', 'direction', 'name')
DIRECTIONS = ('forward', 'backward')


@dataclass
class MorphismDescription:
    """同态文件的解析结果"""
    source: Path
    target: Path
    entries: Dict[str, Dict[str, Fraction]] = field(default_factory=dict)
    direction: str = 'forward'
    name: str = ''


def _line_of(text: str, token: Any) -> Optional[int]:
    """在原文中找 token 第一次出现的行号（找不到返回 None）"""
    needle = json.dumps(token, ensure_ascii=False) if isinstance(token, str) else str(token)
    pos = text.find(needle)
    if pos < 0:
        return None
    return text.count('\n', 0, pos) + 1


def _load_json(text: str, source: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.lineno, f"{source}: JSON 语法错误: {e.msg}")


def _scalar(value: Any, text: str, where: str) -> Fraction:
    if isinstance(value, float):
        raise ParseError(_line_of(text, value), f"{where}: 系数必须是精确有理数，不接受浮点数 {value}")
    try:
        return to_scalar(value)
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(_line_of(text, value), f"{where}: 非法有理数 {value!r} ({e})")


def _require_list(value: Any, key: str) -> List:
    if not isinstance(value, list):
        raise SchemaError(key, f"字段 {key} 应为列表")
    return value


def _linear_map(value: Any, text: str, key: str) -> Dict[str, Fraction]:
    if not isinstance(value, dict):
        raise SchemaError(key, f"字段 {key} 的取值应为 {{基元素: 系数}}")
    return {str(name): _scalar(c, text, key) for name, c in value.items()}


def parse_algebra_text(text: str, source: str = '<string>') -> AlgebraDescription:
    """
    解析代数描述文本

    Args:
        text: JSON 文本
        source: 来源名，用于报错

    Returns:
        AlgebraDescription

    Raises:
        ParseError: JSON 语法错误或非法系数
        SchemaError: 未知字段、缺失字段、重名基元素、引用未知基元素
    """
    data = _load_json(text, source)
    if not isinstance(data, dict):
        raise SchemaError('<root>', "顶层必须是 JSON 对象")
    unknown = [key for key in data if key not in ALGEBRA_KEYS]
    if unknown:
        raise SchemaError(unknown[0], f"未知字段: {unknown[0]}")
    for key in ('degree_k', 'basis', 'unit'):
        if key not in data:
            raise SchemaError(key, f"缺少字段: {key}")

    basis: List[Tuple[str, int]] = []
    for entry in _require_list(data['basis'], 'basis'):
        if not (isinstance(entry, list) and len(entry) == 2 and isinstance(entry[1], int)):
            raise SchemaError('basis', f"基元素应写成 [名字, 次数]: {entry!r}")
        name = str(entry[0])
        if any(name == n for n, _ in basis):
            raise SchemaError('basis', f"基元素重名: {name}")
        basis.append((name, entry[1]))
    names = {n for n, _ in basis}

    def known(name: str, key: str) -> str:
        if name not in names:
            raise SchemaError(key, f"{key} 引用了未知基元素: {name}")
        return name

    if not isinstance(data['degree_k'], int):
        raise SchemaError('degree_k', "degree_k 必须是整数")
    unit = known(str(data['unit']), 'unit')

    products: Dict[Tuple[str, str], Dict[str, Fraction]] = {}
    for entry in _require_list(data.get('products', []), 'products'):
        if not (isinstance(entry, list) and len(entry) == 3):
            raise SchemaError('products', f"乘积应写成 [a, b, {{c: 系数}}]: {entry!r}")
        a, b = known(str(entry[0]), 'products'), known(str(entry[1]), 'products')
        value = _linear_map(entry[2], text, 'products')
        for c in value:
            known(c, 'products')
        products[(a, b)] = value

    differential: Dict[str, Dict[str, Fraction]] = {}
    raw_diff = data.get('differential', {})
    if not isinstance(raw_diff, dict):
        raise SchemaError('differential', "differential 应为 {基元素: {基元素: 系数}}")
    for a, value in raw_diff.items():
        image = _linear_map(value, text, 'differential')
        for c in image:
            known(c, 'differential')
        differential[known(str(a), 'differential')] = image

    pairing: Dict[Tuple[str, str], Fraction] = {}
    for entry in _require_list(data.get('pairing', []), 'pairing'):
        if not (isinstance(entry, list) and len(entry) == 3):
            raise SchemaError('pairing', f"配对应写成 [a, b, 系数]: {entry!r}")
        a, b = known(str(entry[0]), 'pairing'), known(str(entry[1]), 'pairing')
        pairing[(a, b)] = _scalar(entry[2], text, 'pairing')

    desc = AlgebraDescription(
        name=str(data.get('name', Path(source).stem)),
        degree_k=data['degree_k'],
        basis=basis,
        unit=unit,
        products=products,
        differential=differential,
        pairing=pairing,
    )
    logger.debug(f"[解析] {source}: {desc.name}, {len(basis)} 个基元素")
    return desc


def parse_algebra(path) -> AlgebraDescription:
    """读取并解析代数文件"""
    path = Path(path)
    try:
        text = path.read_text(encoding='utf-8')
    except (OSError, UnicodeDecodeError) as e:
        raise ParseError(None, f"无法读取文件 {path}: {e}")
    return parse_algebra_text(text, str(path))


def _coeff_text(c: Fraction) -> str:
    return str(Fraction(c))


def dump_algebra(desc: AlgebraDescription) -> str:
    """把代数描述写回 JSON 文本（parse_algebra_text 的逆）"""
    data = {
        'name': desc.name,
        'degree_k': desc.degree_k,
        'basis': [[n, d] for n, d in desc.basis],
        'unit': desc.unit,
        'products': [[a, b, {c: _coeff_text(v) for c, v in value.items()}]
                     for (a, b), value in desc.products.items()],
        'differential': {a: {c: _coeff_text(v) for c, v in value.items()}
                         for a, value in desc.differential.items()},
        'pairing': [[a, b, _coeff_text(v)] for (a, b), v in desc.pairing.items()],
    }
    return json.dumps(data, ensure_ascii=False, indent=2) + '\n'


def parse_morphism_text(text: str, base_dir: Path, source: str = '<string>') -> MorphismDescription:
    """解析同态描述文本；source/target 路径相对 base_dir 解析"""
    data = _load_json(text, source)
    if not isinstance(data, dict):
        raise SchemaError('<root>', "顶层必须是 JSON 对象")
    unknown = [key for key in data if key not in MORPHISM_KEYS]
    if unknown:
        raise SchemaError(unknown[0], f"未知字段: {unknown[0]}")
    for key in ('source', 'target', 'entries'):
        if key not in data:
            raise SchemaError(key, f"缺少字段: {key}")
    direction = data.get('direction', 'forward')
    if direction not in DIRECTIONS:
        raise SchemaError('direction', f"direction 只能是 {DIRECTIONS}: {direction}")

    entries: Dict[str, Dict[str, Fraction]] = {}
    for entry in _require_list(data['entries'], 'entries'):
        if not isinstance(entry, dict) or set(entry) - {'from', 'to'} or 'from' not in entry:
            raise SchemaError('entries', f"映射项应写成 {{from, to}}: {entry!r}")
        image: Dict[str, Fraction] = {}
        for term in _require_list(entry.get('to', []), 'entries.to'):
            if not isinstance(term, dict) or set(term) != {'basis', 'coeff'}:
                raise SchemaError('entries.to', f"像的项应写成 {{basis, coeff}}: {term!r}")
            image[str(term['basis'])] = _scalar(term['coeff'], text, 'entries.to')
        src = str(entry['from'])
        if src in entries:
            raise SchemaError('entries', f"重复的映射项: {src}")
        entries[src] = image

    return MorphismDescription(
        source=(base_dir / str(data['source'])),
        target=(base_dir / str(data['target'])),
        entries=entries,
        direction=direction,
        name=str(data.get('name', Path(source).stem)),
    )


def parse_morphism(path) -> MorphismDescription:
    """读取并解析同态文件"""
    path = Path(path)
    try:
        text = path.read_text(encoding='utf-8')
    except (OSError, UnicodeDecodeError) as e:
        raise ParseError(None, f"无法读取文件 {path}: {e}")
    return parse_morphism_text(text, path.parent, str(path))


_LOADED: Dict[Path, FrobeniusAlgebra] = {}


def load_algebra(path) -> FrobeniusAlgebra:
    """解析并校验代数文件；同一路径在进程内只构造一次"""
    key = Path(path).resolve()
    if key not in _LOADED:
        _LOADED[key] = validate(parse_algebra(key))
    return _LOADED[key]
