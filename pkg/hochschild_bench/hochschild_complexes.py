"""
Hochschild 链 / 上链复形

约定：
    - Word(bars, tail) 表示 ā_1⊗…⊗ā_p⊗a_{p+1}，bars 只含非单位基下标
    - 全次数 n = Σ(|a_i|-1) + |tail|，∂ 使 n 加一（上同调式记号）
    - Combo = {Word: Fraction} 是线性组合的原始形式，ChainElement 是对外的包装
    - LeveledCochain 是 C^{m,*}(A, Ω^p(B)) 中的齐次元素，按输入词存表
    - 系数经由同态 φ: A -> B 时用 Coefficients 描述，φ = id 时就是 A 自身

窗口内的（上）同调由 GradedComplex 统一计算：每个次数一组有序基，加上基元素上的微分。
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product as cartesian
from typing import Callable, Dict, Hashable, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from .errors import CheckLedger, ComputationError, NotSimplyConnected
from .frobenius_algebra import FrobeniusAlgebra, render_vector
from .graded_signs import epsilon_prefix, sign
from .logger import get_logger
from .rational_linalg import HomologySlice, SparseMatrix, Vector, add_into, clean, homology_at

logger = get_logger()

ONE = Fraction(1)


class Word(NamedTuple):
    """ā_1⊗…⊗ā_p⊗tail"""
    bars: Tuple[int, ...]
    tail: int

    @property
    def p(self) -> int:
        return len(self.bars)


Combo = Dict[Word, Fraction]


def word_sort_key(w: Word) -> Tuple:
    return (len(w.bars), w.bars, w.tail)


def bars_degree(A: FrobeniusAlgebra, bars: Sequence[int]) -> int:
    return sum(A.degree(b) - 1 for b in bars)


def word_degree(A: FrobeniusAlgebra, w: Word) -> int:
    return bars_degree(A, w.bars) + A.degree(w.tail)


def render_word(A: FrobeniusAlgebra, w: Word) -> str:
    parts = [f"{A.name_of(b)}̄" for b in w.bars] + [A.name_of(w.tail)]
    return "⊗".join(parts)


def render_combo(A: FrobeniusAlgebra, combo: Combo) -> str:
    return render_vector([(render_word(A, w), c) for w, c in sorted(combo.items(), key=lambda t: word_sort_key(t[0]))])


def _unit(i: int) -> Vector:
    return {i: ONE}


def words_from_slots(A: FrobeniusAlgebra, bar_vectors: Sequence[Vector], tail: Vector,
                     coeff: Fraction = ONE) -> Combo:
    """
    把各槽位的代数元素展开成词的线性组合

    bar 槽位里的单位分量直接丢掉（规范化的 bar 约定：含单位槽位的词为零）。
    """
    if not coeff:
        return {}
    partial: List[Tuple[Tuple[int, ...], Fraction]] = [((), Fraction(coeff))]
    for v in bar_vectors:
        partial = [(bars + (i,), c * a) for bars, c in partial for i, a in v.items() if i != A.unit and a]
        if not partial:
            return {}
    out: Combo = {}
    for bars, c in partial:
        for t, a in tail.items():
            key = Word(bars, t)
            out[key] = out.get(key, 0) + c * a
    return clean(out)


def combo_add(target: Combo, source: Combo, scale=ONE) -> Combo:
    return add_into(target, source, Fraction(scale))


class ChainElement:
    """Ω^p(A) 或 C_*(A, A) 中的元素：词的有理线性组合"""

    __slots__ = ('algebra', 'terms')

    def __init__(self, algebra: FrobeniusAlgebra, terms: Optional[Dict[Word, Fraction]] = None):
        self.algebra = algebra
        self.terms: Combo = {}
        for w, c in (terms or {}).items():
            if not isinstance(w, Word):
                w = Word(tuple(w[0]), w[1])
            if c and algebra.unit not in w.bars:
                self.terms[w] = self.terms.get(w, 0) + Fraction(c)
        self.terms = clean(self.terms)

    @classmethod
    def word(cls, algebra: FrobeniusAlgebra, bars: Sequence[int], tail: int, coeff=1) -> 'ChainElement':
        return cls(algebra, {Word(tuple(bars), tail): Fraction(coeff)})

    @classmethod
    def from_names(cls, algebra: FrobeniusAlgebra, bars: Sequence[str], tail: str, coeff=1) -> 'ChainElement':
        return cls.word(algebra, [algebra.index(b) for b in bars], algebra.index(tail), coeff)

    @classmethod
    def zero(cls, algebra: FrobeniusAlgebra) -> 'ChainElement':
        return cls(algebra)

    def is_zero(self) -> bool:
        return not self.terms

    def items(self):
        return sorted(self.terms.items(), key=lambda t: word_sort_key(t[0]))

    def degrees(self) -> set:
        return {word_degree(self.algebra, w) for w in self.terms}

    @property
    def degree(self) -> int:
        degs = self.degrees()
        if len(degs) != 1:
            raise ComputationError(f"元素不是齐次的（次数 {sorted(degs)}）")
        return degs.pop()

    def bar_lengths(self) -> set:
        return {w.p for w in self.terms}

    def _check(self, other: 'ChainElement') -> None:
        if other.algebra is not self.algebra:
            raise ComputationError("不同代数上的链元素不能相加")

    def __add__(self, other: 'ChainElement') -> 'ChainElement':
        self._check(other)
        return ChainElement(self.algebra, combo_add(dict(self.terms), other.terms))

    def __sub__(self, other: 'ChainElement') -> 'ChainElement':
        self._check(other)
        return ChainElement(self.algebra, combo_add(dict(self.terms), other.terms, -1))

    def __neg__(self) -> 'ChainElement':
        return ChainElement(self.algebra, {w: -c for w, c in self.terms.items()})

    def __mul__(self, scalar) -> 'ChainElement':
        return ChainElement(self.algebra, {w: c * Fraction(scalar) for w, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, ChainElement):
            return NotImplemented
        return self.algebra is other.algebra and self.terms == other.terms

    __hash__ = None

    def __repr__(self) -> str:
        return render_combo(self.algebra, self.terms)


# ---------- ∂、▶ 与右乘 ----------

def _boundary_word(A: FrobeniusAlgebra, w: Word, horizontal: bool = True, vertical: bool = True) -> Combo:
    bars, tail = w
    m = len(bars)
    degs = [A.degree(b) for b in bars]
    slots = [_unit(b) for b in bars]
    out: Combo = {}
    if vertical and A.has_differential:
        for i in range(1, m + 1):
            new = slots[:i - 1] + [A.d(bars[i - 1])] + slots[i:]
            combo_add(out, words_from_slots(A, new, _unit(tail), -sign(epsilon_prefix(degs, i - 1))))
        combo_add(out, words_from_slots(A, slots, A.d(tail), sign(epsilon_prefix(degs, m))))
    if horizontal and m >= 1:
        for i in range(1, m):
            new = slots[:i - 1] + [A.mul(bars[i - 1], bars[i])] + slots[i + 1:]
            combo_add(out, words_from_slots(A, new, _unit(tail), sign(epsilon_prefix(degs, i))))
        combo_add(out, words_from_slots(A, slots[:m - 1], A.mul(bars[m - 1], tail),
                                        -sign(epsilon_prefix(degs, m - 1))))
        # 循环项：a_1 绕到尾部右侧
        exponent = (sum(degs[1:]) + A.degree(tail) - m + 1) * degs[0]
        combo_add(out, words_from_slots(A, slots[1:], A.mul(tail, bars[0]), sign(exponent)))
    return out


def _linear(fn: Callable[[Word], Combo], combo: Combo) -> Combo:
    out: Combo = {}
    for w, c in combo.items():
        combo_add(out, fn(w), c)
    return out


def chain_boundary(x: ChainElement) -> ChainElement:
    """Hochschild 链的微分 ∂ = ∂_v + ∂_h"""
    A = x.algebra
    return ChainElement(A, _linear(lambda w: _boundary_word(A, w), x.terms))


def horizontal_boundary(x: ChainElement) -> ChainElement:
    """只取 ∂_h"""
    A = x.algebra
    return ChainElement(A, _linear(lambda w: _boundary_word(A, w, vertical=False), x.terms))


def tensor_differential_word(A: FrobeniusAlgebra, w: Word) -> Combo:
    """Ω^p(A) 上的内部微分（与 ∂_v 相同，ε 取 Koszul 前缀）"""
    return _boundary_word(A, w, horizontal=False)


def reduced_projection(x: ChainElement) -> ChainElement:
    """去掉 C_{0,0} = A^0 分量"""
    A = x.algebra
    return ChainElement(A, {w: c for w, c in x.terms.items() if not (w.p == 0 and w.tail == A.unit)})


def act_left_word(A: FrobeniusAlgebra, a: Vector, w: Word) -> Combo:
    """
    a ▶ w = (π⊗id)(b_{-p}(a⊗w))

    p = 0 时就是乘法。
    """
    bars, tail = w
    p = len(bars)
    out: Combo = {}
    for x, ca in a.items():
        if p == 0:
            combo_add(out, words_from_slots(A, [], A.mul(x, tail), ca))
            continue
        dx = A.degree(x)
        degs = [A.degree(b) for b in bars]
        slots = [_unit(b) for b in bars]
        combo_add(out, words_from_slots(A, [A.mul(x, bars[0])] + slots[1:], _unit(tail), ca * sign(dx)))
        if x == A.unit:
            continue
        head = _unit(x)
        for i in range(1, p):
            new = [head] + slots[:i - 1] + [A.mul(bars[i - 1], bars[i])] + slots[i + 1:]
            combo_add(out, words_from_slots(A, new, _unit(tail), ca * sign(dx + epsilon_prefix(degs, i))))
        combo_add(out, words_from_slots(A, [head] + slots[:p - 1], A.mul(bars[p - 1], tail),
                                        -ca * sign(dx + epsilon_prefix(degs, p - 1))))
    return out


def act_left(A: FrobeniusAlgebra, a: Vector, combo: Combo) -> Combo:
    return _linear(lambda w: act_left_word(A, a, w), combo)


def act_right(A: FrobeniusAlgebra, combo: Combo, a: Vector) -> Combo:
    """w·a：只作用在尾部"""
    out: Combo = {}
    for w, c in combo.items():
        for t, x in A.mul_vec(_unit(w.tail), a).items():
            key = Word(w.bars, t)
            out[key] = out.get(key, 0) + c * x
    return clean(out)


def action_left(a, w) -> ChainElement:
    """
    左作用 ▶ 的对外接口

    Args:
        a: 基下标或代数元素（向量）
        w: ChainElement
    """
    A = w.algebra
    vec = _unit(a) if isinstance(a, int) else a
    return ChainElement(A, act_left(A, vec, w.terms))


def counit_first(A: FrobeniusAlgebra, combo: Combo) -> Combo:
    """(ε⊗id)：第一个 bar 槽位取余单位"""
    out: Combo = {}
    for w, c in combo.items():
        if not w.bars:
            continue
        e = A.pair(w.bars[0], A.unit)
        if e:
            key = Word(w.bars[1:], w.tail)
            out[key] = out.get(key, 0) + c * e
    return clean(out)


def prepend_bar(A: FrobeniusAlgebra, bar: Vector, combo: Combo) -> Combo:
    """在每个词前面插入 bar（自动丢掉单位分量）"""
    out: Combo = {}
    for b, cb in bar.items():
        if b == A.unit or not cb:
            continue
        for w, c in combo.items():
            key = Word((b,) + w.bars, w.tail)
            out[key] = out.get(key, 0) + cb * c
    return clean(out)


def kappa_words(A: FrobeniusAlgebra, u: Combo, v: Combo) -> Combo:
    """κ(u ⊗_A v) = ū ⊗ (u_tail ▶ v)"""
    out: Combo = {}
    for wu, cu in u.items():
        acted = act_left(A, _unit(wu.tail), v)
        for wv, cv in acted.items():
            key = Word(wu.bars + wv.bars, wv.tail)
            out[key] = out.get(key, 0) + cu * cv
    return clean(out)


# ---------- 系数 ----------

@dataclass(frozen=True, eq=False)
class Coefficients:
    """
    C^*(A, Ω^p(B)) 的系数数据：A 经 φ 作用在 B 的非交换微分形式上

    images 为 None 时 B = A、φ = id。
    """
    source: FrobeniusAlgebra
    target: FrobeniusAlgebra
    images: Optional[Tuple[Vector, ...]] = None

    @property
    def is_identity(self) -> bool:
        return self.images is None

    def image(self, a: int) -> Vector:
        if self.images is None:
            return _unit(a)
        return self.images[a]

    def bar_image(self, a: int) -> Vector:
        return self.target.bar(self.image(a))


@lru_cache(maxsize=None)
def identity_coefficients(A: FrobeniusAlgebra) -> Coefficients:
    return Coefficients(A, A)


# ---------- 窗口与基的枚举 ----------

@dataclass(frozen=True)
class Window:
    """全次数窗口 [n_min, n_max]；p_cap 只对非单连通代数起作用"""
    n_min: int
    n_max: int
    p_cap: Optional[int] = None

    def __post_init__(self):
        if self.n_min > self.n_max:
            raise ValueError(f"窗口下界 {self.n_min} 大于上界 {self.n_max}")

    def degrees(self) -> range:
        return range(self.n_min, self.n_max + 1)

    def __contains__(self, n: int) -> bool:
        return self.n_min <= n <= self.n_max


def is_approximate(A: FrobeniusAlgebra, window: Window) -> bool:
    """非单连通且靠 p_cap 截断时，结果只是近似"""
    return not A.is_simply_connected and window.p_cap is not None


def require_finite(A: FrobeniusAlgebra, p_cap: Optional[int]) -> None:
    if not A.is_simply_connected and p_cap is None:
        raise NotSimplyConnected(f"{A.name} 不是单连通的 (A^1 ≠ 0)，需要指定 p_cap", algebra=A.name)


@lru_cache(maxsize=None)
def bar_words(A: FrobeniusAlgebra, length: int, shifted: int) -> Tuple[Tuple[int, ...], ...]:
    """长度为 length、平移次数和为 shifted 的全部 bar 词，字典序"""
    if length == 0:
        return ((),) if shifted == 0 else ()
    out = []
    for b in A.bar_indices:
        s = A.degree(b) - 1
        if s > shifted:
            continue
        for rest in bar_words(A, length - 1, shifted - s):
            out.append((b,) + rest)
    return tuple(out)


def max_level_degree(A: FrobeniusAlgebra, p: int) -> int:
    """Ω^p(A) 中词的最大次数"""
    return p * (A.top_degree - 1) + A.top_degree


@lru_cache(maxsize=None)
def words_at(A: FrobeniusAlgebra, p: int, degree: int) -> Tuple[Word, ...]:
    """bar 长度为 p、全次数为 degree 的全部词"""
    out = []
    for t in range(A.dim):
        for bars in bar_words(A, p, degree - A.degree(t)):
            out.append(Word(bars, t))
    return tuple(sorted(out, key=word_sort_key))


def _max_bar_length(A: FrobeniusAlgebra, n: int, p_cap: Optional[int]) -> int:
    s = A.min_bar_shift
    if s is None:
        return 0
    if s >= 1:
        return max(n, 0) // s
    require_finite(A, p_cap)
    return p_cap


def chain_words(A: FrobeniusAlgebra, n: int, p_cap: Optional[int] = None) -> List[Word]:
    out: List[Word] = []
    for p in range(_max_bar_length(A, n, p_cap) + 1):
        out.extend(words_at(A, p, n))
    return out


CochainKey = Tuple[Tuple[int, ...], Word]


def cochain_keys(coeffs: Coefficients, n: int, p: int, p_cap: Optional[int] = None) -> List[CochainKey]:
    """
    C^n(A, Ω^p(B)) 的初等上链基：(输入 bar 词, 输出词)，按 (m, 输入, 输出) 排序
    """
    A, B = coeffs.source, coeffs.target
    out_max = max_level_degree(B, p)
    s = A.min_bar_shift
    if out_max - n < 0:
        return []
    if s is None:
        m_max = 0
    elif s >= 1:
        m_max = (out_max - n) // s
    else:
        require_finite(A, p_cap)
        m_max = p_cap
    keys: List[CochainKey] = []
    for m in range(m_max + 1):
        for d_in in range(0, out_max - n + 1):
            outputs = words_at(B, p, d_in + n)
            if not outputs:
                continue
            for inputs in bar_words(A, m, d_in):
                keys.extend((inputs, w) for w in outputs)
    keys.sort(key=lambda key: (len(key[0]), key[0], word_sort_key(key[1])))
    return keys


# ---------- 上链 ----------

class LeveledCochain:
    """
    C^{m,n}(A, Ω^p(B)) 中的齐次上链

    table: 输入 bar 词 -> 输出（Ω^p(B) 中的 Combo），只保存非零项
    """

    __slots__ = ('coeffs', 'm', 'p', 'degree', 'table')

    def __init__(self, coeffs: Coefficients, m: int, p: int, degree: int,
                 table: Optional[Dict[Tuple[int, ...], Combo]] = None, check: bool = True):
        self.coeffs = coeffs
        self.m = m
        self.p = p
        self.degree = degree
        self.table: Dict[Tuple[int, ...], Combo] = {}
        A, B = coeffs.source, coeffs.target
        for inputs, value in (table or {}).items():
            value = clean(value)
            if not value:
                continue
            inputs = tuple(inputs)
            if check:
                if len(inputs) != m:
                    raise ValueError(f"输入长度 {len(inputs)} 与 m={m} 不符")
                d_in = bars_degree(A, inputs)
                for w in value:
                    if w.p != p or word_degree(B, w) - d_in != degree:
                        raise ValueError(f"输出 {render_word(B, w)} 不在 (p={p}, 次数={degree}) 中")
            self.table[inputs] = dict(value)

    @classmethod
    def elementary(cls, coeffs: Coefficients, inputs: Sequence[int], word: Word, coeff=1) -> 'LeveledCochain':
        A, B = coeffs.source, coeffs.target
        degree = word_degree(B, word) - bars_degree(A, inputs)
        return cls(coeffs, len(inputs), word.p, degree, {tuple(inputs): {word: Fraction(coeff)}})

    @classmethod
    def constant(cls, coeffs: Coefficients, value: ChainElement) -> 'LeveledCochain':
        """m = 0 的上链 () ↦ value"""
        return cls(coeffs, 0, next(iter(value.bar_lengths()), 0), value.degree if value.terms else 0,
                   {(): dict(value.terms)})

    @property
    def source(self) -> FrobeniusAlgebra:
        return self.coeffs.source

    @property
    def target(self) -> FrobeniusAlgebra:
        return self.coeffs.target

    def value(self, inputs: Sequence[int]) -> Combo:
        return self.table.get(tuple(inputs), {})

    def evaluate(self, inputs: Sequence[int]) -> ChainElement:
        return ChainElement(self.target, self.value(inputs))

    def evaluate_slots(self, slots: Sequence[Vector]) -> Combo:
        """在一串代数元素上求值（多重线性展开，单位分量为零）"""
        return evaluate_slots(self, slots)

    def is_zero(self) -> bool:
        return not self.table

    def _like(self, table) -> 'LeveledCochain':
        return LeveledCochain(self.coeffs, self.m, self.p, self.degree, table, check=False)

    def _check(self, other: 'LeveledCochain') -> None:
        if other.coeffs is not self.coeffs or (other.m, other.p) != (self.m, self.p):
            raise ComputationError("双次数或系数不同的上链不能相加")
        if self.table and other.table and other.degree != self.degree:
            raise ComputationError("次数不同的上链不能相加")

    def __add__(self, other: 'LeveledCochain') -> 'LeveledCochain':
        self._check(other)
        table = {k: dict(v) for k, v in self.table.items()}
        for k, v in other.table.items():
            combo_add(table.setdefault(k, {}), v)
        degree = self.degree if self.table else other.degree
        return LeveledCochain(self.coeffs, self.m, self.p, degree, table, check=False)

    def __neg__(self) -> 'LeveledCochain':
        return self * -1

    def __sub__(self, other: 'LeveledCochain') -> 'LeveledCochain':
        return self + (-other)

    def __mul__(self, scalar) -> 'LeveledCochain':
        s = Fraction(scalar)
        return self._like({k: {w: c * s for w, c in v.items()} for k, v in self.table.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, LeveledCochain):
            return NotImplemented
        if not self.table and not other.table:
            return True
        return (self.coeffs is other.coeffs and (self.m, self.p, self.degree) == (other.m, other.p, other.degree)
                and self.table == other.table)

    __hash__ = None

    def keys(self) -> Dict[CochainKey, Fraction]:
        return {(inputs, w): c for inputs, value in self.table.items() for w, c in value.items()}

    def as_matrix(self, inputs: Sequence[Tuple[int, ...]], outputs: Sequence[Word]) -> SparseMatrix:
        """在给定输入 / 输出基下的矩阵（列 = 输入）"""
        row = {w: i for i, w in enumerate(outputs)}
        entries = {}
        for j, x in enumerate(inputs):
            for w, c in self.value(x).items():
                entries[(row[w], j)] = c
        return SparseMatrix(len(outputs), len(inputs), entries)

    def __repr__(self) -> str:
        B = self.target
        A = self.source
        parts = []
        for inputs in sorted(self.table):
            src = "⊗".join(f"{A.name_of(b)}̄" for b in inputs) or "()"
            parts.append(f"{src} ↦ {render_combo(B, self.table[inputs])}")
        return f"LeveledCochain(m={self.m}, p={self.p}, n={self.degree}; " + "; ".join(parts) + ")"


def evaluate_slots(f: LeveledCochain, slots: Sequence[Vector]) -> Combo:
    out: Combo = {}
    A = f.source
    partial: List[Tuple[Tuple[int, ...], Fraction]] = [((), ONE)]
    for v in slots:
        partial = [(xs + (i,), c * a) for xs, c in partial for i, a in v.items() if i != A.unit and a]
        if not partial:
            return {}
    for xs, c in partial:
        combo_add(out, f.value(xs), c)
    return out


class CochainFamily:
    """
    C^n(A, Ω^p(B)) = Π_m C^{m,n} 中的元素：按 m 存放的 LeveledCochain
    """

    __slots__ = ('coeffs', 'p', 'degree', 'components')

    def __init__(self, coeffs: Coefficients, p: int, degree: int,
                 components: Optional[Dict[int, LeveledCochain]] = None):
        self.coeffs = coeffs
        self.p = p
        self.degree = degree
        self.components: Dict[int, LeveledCochain] = {}
        for m, f in (components or {}).items():
            if f.is_zero():
                continue
            if f.p != p:
                raise ComputationError(f"分量的层数 {f.p} 与 p={p} 不符")
            if m in self.components:
                f = self.components[m] + f
            if not f.is_zero():
                self.components[m] = f

    @classmethod
    def of(cls, *cochains: LeveledCochain) -> 'CochainFamily':
        """把若干同层、同次数的上链加成一个族"""
        cochains = [c for c in cochains if not c.is_zero()]
        if not cochains:
            raise ComputationError("空的上链族需要显式给出系数与层数")
        family = cls(cochains[0].coeffs, cochains[0].p, cochains[0].degree)
        for c in cochains:
            family = family + cls(c.coeffs, c.p, c.degree, {c.m: c})
        return family

    @classmethod
    def from_keys(cls, coeffs: Coefficients, p: int, degree: int,
                  keys: Dict[CochainKey, Fraction]) -> 'CochainFamily':
        tables: Dict[int, Dict[Tuple[int, ...], Combo]] = {}
        for (inputs, w), c in keys.items():
            if c:
                tables.setdefault(len(inputs), {}).setdefault(tuple(inputs), {})[w] = Fraction(c)
        return cls(coeffs, p, degree,
                   {m: LeveledCochain(coeffs, m, p, degree, t, check=False) for m, t in tables.items()})

    def component(self, m: int) -> LeveledCochain:
        return self.components.get(m, LeveledCochain(self.coeffs, m, self.p, self.degree))

    def items(self):
        return sorted(self.components.items())

    def is_zero(self) -> bool:
        return not self.components

    def keys(self) -> Dict[CochainKey, Fraction]:
        out: Dict[CochainKey, Fraction] = {}
        for _, f in self.items():
            out.update(f.keys())
        return out

    def __add__(self, other: 'CochainFamily') -> 'CochainFamily':
        if other.coeffs is not self.coeffs or other.p != self.p:
            raise ComputationError("层数或系数不同的上链族不能相加")
        if self.components and other.components and self.degree != other.degree:
            raise ComputationError("次数不同的上链族不能相加")
        comps = dict(self.components)
        for m, f in other.components.items():
            comps[m] = comps[m] + f if m in comps else f
        degree = self.degree if self.components else other.degree
        return CochainFamily(self.coeffs, self.p, degree, comps)

    def __neg__(self) -> 'CochainFamily':
        return self * -1

    def __sub__(self, other: 'CochainFamily') -> 'CochainFamily':
        return self + (-other)

    def __mul__(self, scalar) -> 'CochainFamily':
        return CochainFamily(self.coeffs, self.p, self.degree,
                             {m: f * scalar for m, f in self.components.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, CochainFamily):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return (self.coeffs is other.coeffs and self.p == other.p and self.degree == other.degree
                and self.components == other.components)

    __hash__ = None

    def __repr__(self) -> str:
        return f"CochainFamily(p={self.p}, n={self.degree}, " + ", ".join(repr(f) for _, f in self.items()) + ")"


@lru_cache(maxsize=None)
def _merge_preimages(A: FrobeniusAlgebra) -> Dict[int, Tuple[Tuple[int, int, Fraction], ...]]:
    """目标基元素 t -> 所有 (b, c, μ)，b、c ∈ Ā 且 b·c 的 t 分量为 μ"""
    out: Dict[int, List[Tuple[int, int, Fraction]]] = {}
    for b, c in cartesian(A.bar_indices, repeat=2):
        for t, mu in A.mul(b, c).items():
            out.setdefault(t, []).append((b, c, mu))
    return {t: tuple(v) for t, v in out.items()}


@lru_cache(maxsize=None)
def _d_preimages(A: FrobeniusAlgebra) -> Dict[int, Tuple[Tuple[int, Fraction], ...]]:
    out: Dict[int, List[Tuple[int, Fraction]]] = {}
    for b in A.bar_indices:
        for t, c in A.d(b).items():
            out.setdefault(t, []).append((b, c))
    return {t: tuple(v) for t, v in out.items()}


def omega_cochain_differential(f: LeveledCochain) -> CochainFamily:
    """
    C^*(A, Ω^p(B)) 上的 Hochschild 微分 δ = δ^v + δ^h

    δ^h f(ā_1..ā_{m+1}) = -(-1)^{(|a_1|-1)|f|} φ(a_1) ▶ f(ā_2..)
                          - Σ_i (-1)^{|f|+ε_i} f(.., \\overline{a_i a_{i+1}}, ā_{i+2}, ..)
                          + (-1)^{|f|+ε_m} f(ā_1..ā_m)·φ(a_{m+1})
    δ^v f = d(f(..)) + Σ_i (-1)^{|f|+ε_{i-1}} f(.., \\overline{d a_i}, ..)

    Returns:
        次数 |f|+1 的上链族（分量在 m 与 m+1）
    """
    co = f.coeffs
    A, B = co.source, co.target
    n, m = f.degree, f.m
    horiz: Dict[Tuple[int, ...], Combo] = {}
    merges = _merge_preimages(A)

    for y, val in f.table.items():
        for a in A.bar_indices:
            x = (a,) + y
            combo_add(horiz.setdefault(x, {}), act_left(B, co.image(a), val),
                      -sign((A.degree(a) - 1) * n))
            x = y + (a,)
            degs = [A.degree(b) for b in x]
            combo_add(horiz.setdefault(x, {}), act_right(B, val, co.image(a)),
                      sign(n + epsilon_prefix(degs, m)))
        for i in range(1, m + 1):
            for b, c, mu in merges.get(y[i - 1], ()):
                x = y[:i - 1] + (b, c) + y[i:]
                degs = [A.degree(z) for z in x]
                combo_add(horiz.setdefault(x, {}), val, -sign(n + epsilon_prefix(degs, i)) * mu)

    components = {m + 1: LeveledCochain(co, m + 1, f.p, n + 1, horiz, check=False)}

    if A.has_differential or B.has_differential:
        vert: Dict[Tuple[int, ...], Combo] = {}
        dpre = _d_preimages(A)
        for y, val in f.table.items():
            combo_add(vert.setdefault(y, {}), _linear(lambda w: tensor_differential_word(B, w), val))
            for i in range(1, m + 1):
                for b, c in dpre.get(y[i - 1], ()):
                    x = y[:i - 1] + (b,) + y[i:]
                    degs = [A.degree(z) for z in x]
                    combo_add(vert.setdefault(x, {}), val, sign(n + epsilon_prefix(degs, i - 1)) * c)
        components[m] = LeveledCochain(co, m, f.p, n + 1, vert, check=False)

    return CochainFamily(co, f.p, n + 1, components)


def cochain_differential(f: LeveledCochain) -> CochainFamily:
    """p = 0 时的 Hochschild 上链微分"""
    if f.p != 0:
        raise ComputationError(f"cochain_differential 只接受 p=0 的上链，收到 p={f.p}")
    return omega_cochain_differential(f)


def family_differential(x: CochainFamily) -> CochainFamily:
    out = CochainFamily(x.coeffs, x.p, x.degree + 1)
    for _, f in x.items():
        out = out + omega_cochain_differential(f)
    return out


# ---------- bar 分解 ----------

class BarWord(NamedTuple):
    """a_0 ⊗ ā_1⊗…⊗ā_p ⊗ a_{p+1} ∈ Bar_{-p}(A)"""
    head: int
    bars: Tuple[int, ...]
    tail: int


BarCombo = Dict[Hashable, Fraction]


def _bar_head_sign(A: FrobeniusAlgebra, head: int) -> int:
    return sign(A.degree(head))


def _bar_words_from(A: FrobeniusAlgebra, head: Vector, bar_vectors: Sequence[Vector], tail: Vector,
                    coeff) -> BarCombo:
    out: BarCombo = {}
    for h, ch in head.items():
        for w, c in words_from_slots(A, bar_vectors, tail, coeff * ch).items():
            key = BarWord(h, w.bars, w.tail)
            out[key] = out.get(key, 0) + c
    return clean(out)


def bar_differential(A: FrobeniusAlgebra, x: BarWord) -> BarCombo:
    """
    b_{-p}: Bar_{-p} -> Bar_{-p+1}；p = 0 时 b_0 = μ，结果以 int 键表示 A 中元素
    """
    h, bars, t = x
    p = len(bars)
    if p == 0:
        return dict(A.mul(h, t))
    degs = [A.degree(b) for b in bars]
    slots = [_unit(b) for b in bars]
    s0 = _bar_head_sign(A, h)
    out: BarCombo = {}
    add_into(out, _bar_words_from(A, A.mul(h, bars[0]), slots[1:], _unit(t), s0))
    for i in range(1, p):
        new = slots[:i - 1] + [A.mul(bars[i - 1], bars[i])] + slots[i + 1:]
        add_into(out, _bar_words_from(A, _unit(h), new, _unit(t), s0 * sign(epsilon_prefix(degs, i))))
    add_into(out, _bar_words_from(A, _unit(h), slots[:p - 1], A.mul(bars[p - 1], t),
                                  -s0 * sign(epsilon_prefix(degs, p - 1))))
    return out


def bar_internal_differential(A: FrobeniusAlgebra, x) -> BarCombo:
    """Bar_{-p} 上由 d 诱导的内部微分（Koszul 规则；int 键表示 A 中元素）"""
    if isinstance(x, int):
        return dict(A.d(x))
    h, bars, t = x
    degs = [A.degree(b) for b in bars]
    slots = [_unit(b) for b in bars]
    dh = A.degree(h)
    out: BarCombo = {}
    add_into(out, _bar_words_from(A, A.d(h), slots, _unit(t), ONE))
    for i in range(1, len(bars) + 1):
        new = slots[:i - 1] + [A.d(bars[i - 1])] + slots[i:]
        add_into(out, _bar_words_from(A, _unit(h), new, _unit(t), -sign(dh + epsilon_prefix(degs, i - 1))))
    add_into(out, _bar_words_from(A, _unit(h), slots, A.d(t), sign(dh + epsilon_prefix(degs, len(bars)))))
    return out


def bar_contraction(A: FrobeniusAlgebra, x) -> BarCombo:
    """χ: a_0⊗ā_1..⊗a_p ↦ 1⊗ā_0⊗ā_1..⊗a_p；从 A 出发时 a ↦ 1⊗a"""
    if isinstance(x, int):
        return {BarWord(A.unit, (), x): ONE}
    h, bars, t = x
    if h == A.unit:
        return {}
    return {BarWord(A.unit, (h,) + bars, t): ONE}


def _bar_linear(fn, combo: BarCombo) -> BarCombo:
    out: BarCombo = {}
    for key, c in combo.items():
        add_into(out, fn(key), c)
    return out


def bar_word_degree(A: FrobeniusAlgebra, x) -> int:
    if isinstance(x, int):
        return A.degree(x)
    return A.degree(x.head) + bars_degree(A, x.bars) + A.degree(x.tail)


def bar_words_at(A: FrobeniusAlgebra, p: int, degree: int) -> List[BarWord]:
    out = []
    for h in range(A.dim):
        for w in words_at(A, p, degree - A.degree(h)):
            out.append(BarWord(h, w.bars, w.tail))
    return out


def _bar_window(A: FrobeniusAlgebra, window: Window) -> List[BarWord]:
    words: List[BarWord] = []
    for n in window.degrees():
        for p in range(_max_bar_length(A, n, window.p_cap) + 1):
            words.extend(bar_words_at(A, p, n))
    return words


def bar_contraction_check(A: FrobeniusAlgebra, window: Window, strict: bool = False) -> CheckLedger:
    """
    χ_{-p}∘b_{-p} + b_{-p-1}∘χ_{-p-1} = id 在窗口内每个 bar 词上成立；另外 μ∘χ_0 = id
    """
    ledger = CheckLedger('bar-contraction')
    for a in range(A.dim):
        ledger.tick()
        if _bar_linear(lambda y: bar_differential(A, y), bar_contraction(A, a)) != {a: ONE}:
            ledger.fail('contraction', A.name_of(a))
    for x in _bar_window(A, window):
        lhs = _bar_linear(lambda y: bar_contraction(A, y), bar_differential(A, x))
        add_into(lhs, _bar_linear(lambda y: bar_differential(A, y), bar_contraction(A, x)))
        ledger.tick()
        if lhs != {x: ONE}:
            witness = render_word(A, Word((x.head,) + x.bars, x.tail))
            ledger.fail('contraction', f"p={len(x.bars)}: {witness}", lhs)
    logger.info(f"[bar 分解] {A.name}: 收缩检查 {ledger.checked} 项, 失败 {len(ledger.failures)} 项")
    if strict:
        ledger.raise_if_failed()
    return ledger


def bar_square_check(A: FrobeniusAlgebra, window: Window, strict: bool = False) -> CheckLedger:
    """b∘b = 0 与 b∘d + d∘b = 0"""
    ledger = CheckLedger('bar-square')
    for x in _bar_window(A, window):
        if not x.bars:
            continue
        witness = render_word(A, Word((x.head,) + x.bars, x.tail))
        ledger.tick()
        bb = _bar_linear(lambda y: bar_differential(A, y), bar_differential(A, x))
        if bb:
            ledger.fail('b-square', witness, bb)
        if A.has_differential:
            ledger.tick()
            lhs = _bar_linear(lambda y: bar_internal_differential(A, y), bar_differential(A, x))
            add_into(lhs, _bar_linear(lambda y: bar_differential(A, y), bar_internal_differential(A, x)))
            if lhs:
                ledger.fail('b-d-anticommute', witness, lhs)
    if strict:
        ledger.raise_if_failed()
    return ledger


# ---------- ▶ 的恒等式 ----------

def _window_words(A: FrobeniusAlgebra, window: Window, min_p: int = 0) -> List[Word]:
    out: List[Word] = []
    for n in window.degrees():
        out.extend(w for w in chain_words(A, n, window.p_cap) if w.p >= min_p)
    return out


def action_counit_check(A: FrobeniusAlgebra, window: Window, strict: bool = False) -> CheckLedger:
    """
    收缩同伦里用到的三条 ▶ / ε 恒等式，对窗口内 bar 长度 p >= 1 的每个词 α：

        Σ (-1)^{|f_i||α|} (ε⊗id)(e_i ▶ (α f_i)) = ∂_h α
        Σ (-1)^{(|f_i|-1)(1-k)} ē_i ⊗ (ε⊗id)(f_i ▶ α) = -α
        Σ (-1)^{|e_i|(1-k)} e_i ▶ (ε⊗id)(f_i ▶ α) = 0
    """
    k = A.k
    deg = A.degree
    ledger = CheckLedger('action-counit')
    for w in _window_words(A, window, min_p=1):
        alpha = {w: ONE}
        da = word_degree(A, w)
        first: Combo = {}
        second: Combo = {}
        third: Combo = {}
        for e, f, c in A.casimir.terms:
            combo_add(first, counit_first(A, act_left(A, _unit(e), act_right(A, alpha, _unit(f)))),
                      sign(deg(f) * da) * c)
            inner = counit_first(A, act_left(A, _unit(f), alpha))
            combo_add(second, prepend_bar(A, _unit(e), inner), sign((deg(f) - 1) * (1 - k)) * c)
            combo_add(third, act_left(A, _unit(e), inner), sign(deg(e) * (1 - k)) * c)
        witness = render_word(A, w)
        ledger.tick(3)
        target = _boundary_word(A, w, vertical=False)
        if clean(first) != target:
            ledger.fail('counit-boundary', witness, render_combo(A, first))
        if clean(second) != {w: -ONE}:
            ledger.fail('counit-reproduce', witness, render_combo(A, second))
        if clean(third):
            ledger.fail('counit-vanish', witness, render_combo(A, third))
    if strict:
        ledger.raise_if_failed()
    return ledger


def action_law_check(A: FrobeniusAlgebra, window: Window, strict: bool = False) -> CheckLedger:
    """(ab)▶w = a▶(b▶w)，以及 ▶ 与尾部右乘交换"""
    ledger = CheckLedger('action-law')
    for w in _window_words(A, window):
        combo = {w: ONE}
        for a, b in cartesian(range(A.dim), repeat=2):
            ledger.tick(2)
            lhs = act_left(A, A.mul(a, b), combo)
            rhs = act_left(A, _unit(a), act_left(A, _unit(b), combo))
            if lhs != rhs:
                ledger.fail('left-action', f"a={A.name_of(a)}, b={A.name_of(b)}, w={render_word(A, w)}")
            lhs = act_right(A, act_left(A, _unit(a), combo), _unit(b))
            rhs = act_left(A, _unit(a), act_right(A, combo, _unit(b)))
            if lhs != rhs:
                ledger.fail('bimodule', f"a={A.name_of(a)}, c={A.name_of(b)}, w={render_word(A, w)}")
    if strict:
        ledger.raise_if_failed()
    return ledger


# ---------- 窗口同调 ----------

class GradedComplex:
    """
    有限窗口里的上链复形：basis(n) 给出有序基，differential(key) 给出 d(key)（落在 n+1）

    to_element / from_element 在基坐标和领域对象之间转换。
    """

    def __init__(self, name: str, basis: Callable[[int], List[Hashable]],
                 differential: Callable[[Hashable], Dict[Hashable, Fraction]],
                 to_element: Callable[[int, Dict[Hashable, Fraction]], object] = None,
                 from_element: Callable[[object], Dict[Hashable, Fraction]] = None):
        self.name = name
        self._basis_fn = basis
        self._differential = differential
        self._to_element = to_element or (lambda n, combo: combo)
        self._from_element = from_element or (lambda x: x)
        self._bases: Dict[int, List[Hashable]] = {}
        self._index: Dict[int, Dict[Hashable, int]] = {}
        self._matrices: Dict[int, SparseMatrix] = {}
        self._homology: Dict[int, HomologySlice] = {}

    def basis(self, n: int) -> List[Hashable]:
        if n not in self._bases:
            self._bases[n] = list(self._basis_fn(n))
            self._index[n] = {key: i for i, key in enumerate(self._bases[n])}
            logger.debug(f"[{self.name}] 次数 {n}: 基大小 {len(self._bases[n])}")
        return self._bases[n]

    def index(self, n: int) -> Dict[Hashable, int]:
        self.basis(n)
        return self._index[n]

    def differential_of(self, key: Hashable) -> Dict[Hashable, Fraction]:
        return self._differential(key)

    def matrix(self, n: int) -> SparseMatrix:
        """d: C^n -> C^{n+1}"""
        if n not in self._matrices:
            source = self.basis(n)
            target = self.index(n + 1)
            entries = {}
            for j, key in enumerate(source):
                for image, c in self._differential(key).items():
                    if image not in target:
                        raise ComputationError(f"[{self.name}] 微分的像 {image!r} 不在次数 {n + 1} 的基中")
                    entries[(target[image], j)] = c
            self._matrices[n] = SparseMatrix(len(self.basis(n + 1)), len(source), entries)
        return self._matrices[n]

    def homology(self, n: int) -> HomologySlice:
        if n not in self._homology:
            self._homology[n] = homology_at(self.matrix(n - 1), self.matrix(n))
        return self._homology[n]

    def to_vector(self, n: int, combo: Dict[Hashable, Fraction]) -> Vector:
        idx = self.index(n)
        out: Vector = {}
        for key, c in combo.items():
            if not c:
                continue
            if key not in idx:
                raise ComputationError(f"[{self.name}] {key!r} 不在次数 {n} 的基中")
            out[idx[key]] = c
        return out

    def from_vector(self, n: int, vector: Vector) -> Dict[Hashable, Fraction]:
        basis = self.basis(n)
        return {basis[i]: c for i, c in vector.items() if c}

    def element(self, n: int, vector: Vector):
        return self._to_element(n, self.from_vector(n, vector))

    def vector_of(self, n: int, element) -> Vector:
        return self.to_vector(n, self._from_element(element))


@dataclass
class HomologyReport:
    """窗口内每个次数的同调维数、代表元和约化映射"""
    label: str
    window: Window
    complex: GradedComplex
    slices: Dict[int, HomologySlice]
    approximate: bool = False

    def dims(self) -> Dict[int, int]:
        return {n: s.dim for n, s in sorted(self.slices.items())}

    def dim(self, n: int) -> int:
        return self.slices[n].dim if n in self.slices else self.complex.homology(n).dim

    def slice(self, n: int) -> HomologySlice:
        return self.slices[n] if n in self.slices else self.complex.homology(n)

    def representatives(self, n: int) -> List:
        return [self.complex.element(n, v) for v in self.slice(n).representatives]

    def reduce(self, n: int, element) -> Tuple[Fraction, ...]:
        return self.slice(n).reduce(self.complex.vector_of(n, element))

    def reduce_vector(self, n: int, vector: Vector) -> Tuple[Fraction, ...]:
        return self.slice(n).reduce(vector)


def _homology_report(label: str, cx: GradedComplex, window: Window, approximate: bool) -> HomologyReport:
    slices = {n: cx.homology(n) for n in window.degrees()}
    logger.info(f"[{label}] 窗口 [{window.n_min}, {window.n_max}] 维数: "
                + ", ".join(f"{n}:{s.dim}" for n, s in slices.items()))
    return HomologyReport(label, window, cx, slices, approximate)


@lru_cache(maxsize=None)
def chain_complex(A: FrobeniusAlgebra, reduced: bool = False, p_cap: Optional[int] = None) -> GradedComplex:
    """C_*(A, A)（或约化复形）作为 GradedComplex，键为 Word"""
    require_finite(A, p_cap)
    killed = Word((), A.unit)

    def basis(n: int) -> List[Word]:
        words = chain_words(A, n, p_cap)
        return [w for w in words if not (reduced and w == killed)]

    def differential(w: Word) -> Combo:
        out = _boundary_word(A, w)
        if reduced:
            out.pop(killed, None)
        if p_cap is not None:
            out = {x: c for x, c in out.items() if x.p <= p_cap}
        return out

    return GradedComplex(f"{A.name}:{'reduced ' if reduced else ''}chains", basis, differential,
                         to_element=lambda n, combo: ChainElement(A, combo),
                         from_element=lambda x: x.terms)


@lru_cache(maxsize=None)
def leveled_complex(coeffs: Coefficients, p: int, p_cap: Optional[int] = None) -> GradedComplex:
    """C^*(A, Ω^p(B))，键为 (输入 bar 词, 输出词)"""
    require_finite(coeffs.source, p_cap)
    require_finite(coeffs.target, p_cap)

    def differential(key: CochainKey) -> Dict[CochainKey, Fraction]:
        inputs, w = key
        return omega_cochain_differential(LeveledCochain.elementary(coeffs, inputs, w)).keys()

    def to_element(n: int, combo) -> CochainFamily:
        return CochainFamily.from_keys(coeffs, p, n, combo)

    A, B = coeffs.source, coeffs.target
    name = f"{A.name}:C*(Ω^{p})" if coeffs.is_identity else f"{A.name}->{B.name}:C*(Ω^{p})"
    return GradedComplex(name, lambda n: cochain_keys(coeffs, n, p, p_cap), differential,
                         to_element=to_element, from_element=lambda x: x.keys())


def enumerate_basis(A: FrobeniusAlgebra, window: Window, n: int, kind: str, p: int = 0) -> List:
    """
    次数 n 的有序基

    Args:
        kind: "chain" / "reduced_chain" / "cochain"（层数 p）/ "tate"
    """
    if kind == 'chain':
        return chain_complex(A, False, window.p_cap).basis(n)
    if kind == 'reduced_chain':
        return chain_complex(A, True, window.p_cap).basis(n)
    if kind == 'cochain':
        return leveled_complex(identity_coefficients(A), p, window.p_cap).basis(n)
    if kind == 'tate':
        from .tate_singular import tate_complex
        return tate_complex(A, window.p_cap).basis(n)
    raise ValueError(f"Unknown basis kind: {kind}. Available kinds: chain, reduced_chain, cochain, tate")


def hh_homology(A: FrobeniusAlgebra, window: Window, reduced: bool = False) -> HomologyReport:
    """窗口内的 Hochschild 同调 HH_*(A, A)（按全次数标记）"""
    cx = chain_complex(A, reduced, window.p_cap)
    label = f"HH{'bar' if reduced else ''}_*({A.name})"
    return _homology_report(label, cx, window, is_approximate(A, window))


def hh_cohomology(A: FrobeniusAlgebra, window: Window) -> HomologyReport:
    """窗口内的 Hochschild 上同调 HH^*(A, A)"""
    cx = leveled_complex(identity_coefficients(A), 0, window.p_cap)
    return _homology_report(f"HH^*({A.name})", cx, window, is_approximate(A, window))


def leveled_cohomology(coeffs: Coefficients, window: Window, level: int) -> HomologyReport:
    """C^*(A, Ω^level(B)) 的上同调"""
    cx = leveled_complex(coeffs, level, window.p_cap)
    approx = is_approximate(coeffs.source, window) or is_approximate(coeffs.target, window)
    return _homology_report(f"H(C*({coeffs.source.name},Ω^{level}({coeffs.target.name})))", cx, window, approx)


def differential_square_check(A: FrobeniusAlgebra, window: Window, levels: Iterable[int] = (0, 1, 2),
                              strict: bool = False) -> CheckLedger:
    """∂² = 0 与 δ² = 0（各层 p）在窗口内每个基元素上成立"""
    ledger = CheckLedger('differential-square')
    chains = chain_complex(A, False, window.p_cap)
    for n in window.degrees():
        for w in chains.basis(n):
            ledger.tick()
            twice = _linear(lambda x: _boundary_word(A, x), _boundary_word(A, w))
            if twice:
                ledger.fail('boundary-square', render_word(A, w), render_combo(A, twice))
    coeffs = identity_coefficients(A)
    for p in levels:
        for n in window.degrees():
            for inputs, w in cochain_keys(coeffs, n, p, window.p_cap):
                ledger.tick()
                f = LeveledCochain.elementary(coeffs, inputs, w)
                twice = family_differential(omega_cochain_differential(f))
                if not twice.is_zero():
                    ledger.fail('coboundary-square', f"p={p}: {f!r}", repr(twice))
    logger.info(f"[d²] {A.name}: 检查 {ledger.checked} 项, 失败 {len(ledger.failures)} 项")
    if strict:
        ledger.raise_if_failed()
    return ledger
