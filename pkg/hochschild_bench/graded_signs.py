"""
分次符号引擎

所有微分和乘积里的符号都从这里取：Koszul 交换符号、ε 前缀奇偶性、置换符号。
约定：
    - sign(e) 把奇偶性 e 变成 ±1
    - sĀ 的槽位贡献平移次数 |a| - 1
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Sequence, Tuple

from .errors import IndexOutOfRange, SchemaError


def sign(parity: int) -> int:
    """(-1)^parity"""
    return -1 if parity % 2 else 1


def koszul_swap_sign(dega: int, degb: int) -> int:
    """交换两个齐次元素的符号 (-1)^{|a||b|}"""
    return sign(dega * degb)


def shifted_degree(degree: int) -> int:
    """sĀ 中的次数"""
    return degree - 1


def epsilon_prefix(bar_degrees: Sequence[int], i: int) -> int:
    """
    ε_i = |a_1| + ... + |a_i| - i 的奇偶性

    Args:
        bar_degrees: 各槽位在 A 中的次数（未平移）
        i: 前缀长度，0 <= i <= len(bar_degrees)

    Returns:
        0 或 1
    """
    if i < 0 or i > len(bar_degrees):
        raise IndexOutOfRange(f"ε 前缀长度 {i} 超出 [0, {len(bar_degrees)}]", i=i)
    return (sum(bar_degrees[:i]) - i) % 2


def permutation_sign(degrees: Sequence[int], order: Sequence[int]) -> int:
    """
    把符号序列重排成 order 给出的顺序时的 Koszul 符号

    Args:
        degrees: 原位置上各符号的次数
        order: 新序列第 j 位放原来第 order[j] 个符号

    Returns:
        ±1，等于所有逆序对 (i, j) 的 (-1)^{|a_i||a_j|} 之积
    """
    if sorted(order) != list(range(len(degrees))):
        raise IndexOutOfRange(f"不是 0..{len(degrees) - 1} 的置换: {list(order)}")
    parity = 0
    for x in range(len(order)):
        for y in range(x + 1, len(order)):
            if order[x] > order[y]:
                parity += degrees[order[x]] * degrees[order[y]]
    return sign(parity)


def adjacent_swap_sign(degrees: Sequence[int], order: Sequence[int], strategy: str = "bubble") -> int:
    """
    用相邻对换实际执行重排并累积符号（和 permutation_sign 互为校验）

    Args:
        strategy: "bubble" 冒泡 / "insertion" 插入 / "selection" 选择（每次把目标元素逐步左移）
    """
    if sorted(order) != list(range(len(degrees))):
        raise IndexOutOfRange(f"不是 0..{len(degrees) - 1} 的置换: {list(order)}")
    # 目标位置：原第 i 个符号应去的位置
    target = [0] * len(order)
    for pos, src in enumerate(order):
        target[src] = pos
    current = list(range(len(degrees)))
    parity = 0

    def swap(j: int) -> None:
        nonlocal parity
        parity += degrees[current[j]] * degrees[current[j + 1]]
        current[j], current[j + 1] = current[j + 1], current[j]

    n = len(current)
    if strategy == "bubble":
        for _ in range(n):
            for j in range(n - 1):
                if target[current[j]] > target[current[j + 1]]:
                    swap(j)
    elif strategy == "insertion":
        for i in range(1, n):
            j = i
            while j > 0 and target[current[j - 1]] > target[current[j]]:
                swap(j - 1)
                j -= 1
    elif strategy == "selection":
        for pos in range(n):
            j = current.index(order[pos])
            while j > pos:
                swap(j - 1)
                j -= 1
    else:
        raise ValueError(f"Unknown strategy: {strategy}. Available strategies: bubble, insertion, selection")
    return sign(parity)


@dataclass(frozen=True)
class GradedBasis:
    """带次数的有序基，枚举顺序即规范顺序"""
    elements: Tuple[Tuple[str, int], ...]
    _index: Dict[str, int] = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        seen = {}
        for i, (name, _) in enumerate(self.elements):
            if name in seen:
                raise SchemaError(name, f"基元素重名: {name}")
            seen[name] = i
        object.__setattr__(self, '_index', seen)

    def __len__(self) -> int:
        return len(self.elements)

    def name(self, i: int) -> str:
        return self.elements[i][0]

    def degree(self, i: int) -> int:
        return self.elements[i][1]

    def index_of(self, name: str) -> int:
        if name not in self._index:
            raise SchemaError(name, f"未知基元素: {name}")
        return self._index[name]

    @property
    def names(self) -> List[str]:
        return [n for n, _ in self.elements]

    @property
    def degrees(self) -> List[int]:
        return [d for _, d in self.elements]


@dataclass(frozen=True)
class SignContext:
    """
    一串待排列 / 待作用的符号的次数

    shifted=True 时 degrees 视为 A 中次数，内部使用平移后的 |a|-1。
    """
    degrees: Tuple[int, ...]
    shifted: bool = False

    def effective(self, i: int) -> int:
        d = self.degrees[i]
        return d - 1 if self.shifted else d

    def prefix(self, i: int) -> int:
        """前 i 个符号的（有效）次数和的奇偶性"""
        if i < 0 or i > len(self.degrees):
            raise IndexOutOfRange(f"前缀长度 {i} 超出 [0, {len(self.degrees)}]", i=i)
        return sum(self.effective(j) for j in range(i)) % 2

    def passing_sign(self, map_degree: int, i: int) -> int:
        """次数为 map_degree 的映射越过前 i 个符号时的 Koszul 符号"""
        return sign(map_degree * self.prefix(i))

    def permute(self, order: Sequence[int]) -> int:
        return permutation_sign([self.effective(i) for i in range(len(self.degrees))], order)


Functional = Mapping[int, Fraction]


def dual_pairing_embed(alpha: Functional, beta: Functional) -> Callable[[int, int], Fraction]:
    """
    σ_{U,V}: U^∨ ⊗ V^∨ -> (V ⊗ U)^∨, α⊗β ↦ (v⊗u ↦ β(v) α(u))

    Args:
        alpha: U 上的泛函（基下标 -> 值）
        beta: V 上的泛函

    Returns:
        V⊗U 的基对 (v, u) 上的取值函数
    """
    def evaluate(v: int, u: int) -> Fraction:
        return Fraction(beta.get(v, 0)) * Fraction(alpha.get(u, 0))
    return evaluate


def dual_differential(alpha: Functional, alpha_degree: int,
                      differential: Mapping[int, Mapping[int, Fraction]]) -> Dict[int, Fraction]:
    """
    对偶微分 d(α)(x) = -(-1)^{|α|} α(dx)

    Args:
        alpha: 泛函
        alpha_degree: |α|
        differential: 基元素 -> d(基元素) 的稀疏表

    Returns:
        d(α) 的稀疏表示
    """
    out: Dict[int, Fraction] = {}
    factor = -sign(alpha_degree)
    for x, dx in differential.items():
        value = sum((Fraction(c) * Fraction(alpha.get(y, 0)) for y, c in dx.items()), Fraction(0))
        if value:
            out[x] = factor * value
    return out
