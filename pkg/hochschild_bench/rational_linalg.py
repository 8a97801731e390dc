"""
有理数域上的精确线性代数

向量统一用稀疏字典 {坐标: Fraction} 表示，矩阵用 SparseMatrix。消元采用整数
（无分数）形式：每一行先清分母再约去公因子，主元按最小位长挑选，位长相同时取
行号最小者，因此同样的输入总是得到逐位相同的约化阶梯形。
"""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .errors import CompositionNotZero, ComputationError, NotInvertible
from .logger import get_logger

logger = get_logger()

Vector = Dict[int, Fraction]


def to_scalar(value) -> Fraction:
    """把 int / Fraction / "p/q" 字符串转成 Fraction，非法输入抛 ValueError"""
    if isinstance(value, bool):
        raise ValueError(f"不是有理数: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if '/' in text:
            num, _, den = text.partition('/')
            if int(den) == 0:
                raise ValueError(f"分母为零: {value!r}")
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    raise ValueError(f"不是有理数: {value!r}")


def clean(vector: Dict) -> Dict:
    """去掉零系数"""
    return {k: v for k, v in vector.items() if v}


def add_into(target: Dict, source: Dict, scale: Fraction = Fraction(1)) -> Dict:
    """target += scale * source（原地），返回 target"""
    if not scale:
        return target
    for key, value in source.items():
        new = target.get(key, 0) + scale * value
        if new:
            target[key] = new
        else:
            target.pop(key, None)
    return target


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _primitive(row: Dict[int, int]) -> Dict[int, int]:
    if not row:
        return row
    g = reduce(gcd, (abs(v) for v in row.values()))
    if g > 1:
        return {c: v // g for c, v in row.items()}
    return row


def _integer_row(row: Dict[int, Fraction]) -> Dict[int, int]:
    row = clean(row)
    if not row:
        return {}
    den = reduce(_lcm, (Fraction(v).denominator for v in row.values()))
    return _primitive({c: int(Fraction(v) * den) for c, v in row.items()})


def row_reduce(rows: Iterable[Dict[int, Fraction]]) -> Tuple[List[Vector], List[int]]:
    """
    无分数消元，返回约化行阶梯形

    Args:
        rows: 稀疏行向量

    Returns:
        (rref 行列表, 主元列列表)，每行主元系数为 1，主元列严格递增
    """
    work = [r for r in (_integer_row(r) for r in rows) if r]
    pivots: List[Tuple[int, Dict[int, int]]] = []
    columns = sorted({c for r in work for c in r})

    for col in columns:
        candidates = [i for i, r in enumerate(work) if r.get(col)]
        if not candidates:
            continue
        best = min(candidates, key=lambda i: (abs(work[i][col]).bit_length(), i))
        prow = work.pop(best)
        pv = prow[col]

        def eliminate(r: Dict[int, int]) -> Dict[int, int]:
            c = r.get(col)
            if not c:
                return r
            new = {}
            for key in set(r) | set(prow):
                v = pv * r.get(key, 0) - c * prow.get(key, 0)
                if v:
                    new[key] = v
            return _primitive(new)

        work = [x for x in (eliminate(r) for r in work) if x]
        pivots = [(pc, eliminate(pr)) for pc, pr in pivots]
        pivots.append((col, prow))

    rref = [{c: Fraction(v, pr[pc]) for c, v in sorted(pr.items())} for pc, pr in pivots]
    return rref, [pc for pc, _ in pivots]


class SparseMatrix:
    """稀疏有理矩阵，不存显式零"""

    __slots__ = ('rows', 'cols', '_entries')

    def __init__(self, rows: int, cols: int,
                 entries: Optional[Dict[Tuple[int, int], Fraction]] = None):
        if rows < 0 or cols < 0:
            raise ValueError(f"非法矩阵尺寸: {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        self._entries: Dict[Tuple[int, int], Fraction] = {}
        for (r, c), v in (entries or {}).items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise ValueError(f"下标越界: ({r}, {c}) 不在 {rows}x{cols} 内")
            v = to_scalar(v)
            if v:
                self._entries[(r, c)] = v

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence]) -> 'SparseMatrix':
        rows = len(dense)
        cols = len(dense[0]) if rows else 0
        return cls(rows, cols, {(r, c): v for r, row in enumerate(dense) for c, v in enumerate(row)})

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[Vector]) -> 'SparseMatrix':
        return cls(rows, len(columns), {(r, c): v for c, col in enumerate(columns) for r, v in col.items()})

    @classmethod
    def zero(cls, rows: int, cols: int) -> 'SparseMatrix':
        return cls(rows, cols)

    def entries(self) -> Iterator[Tuple[int, int, Fraction]]:
        for (r, c) in sorted(self._entries):
            yield r, c, self._entries[(r, c)]

    def get(self, r: int, c: int) -> Fraction:
        return self._entries.get((r, c), Fraction(0))

    def to_dense(self) -> List[List[Fraction]]:
        dense = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (r, c), v in self._entries.items():
            dense[r][c] = v
        return dense

    def row_vectors(self) -> List[Vector]:
        out: List[Vector] = [{} for _ in range(self.rows)]
        for (r, c), v in self._entries.items():
            out[r][c] = v
        return out

    def column(self, c: int) -> Vector:
        return {r: v for (r, cc), v in self._entries.items() if cc == c}

    def transpose(self) -> 'SparseMatrix':
        return SparseMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self._entries.items()})

    def apply(self, vector: Vector) -> Vector:
        out: Vector = {}
        for (r, c), v in self._entries.items():
            x = vector.get(c)
            if x:
                out[r] = out.get(r, 0) + v * x
        return clean(out)

    def __matmul__(self, other: 'SparseMatrix') -> 'SparseMatrix':
        if self.cols != other.rows:
            raise ValueError(f"尺寸不匹配: {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        by_row: Dict[int, List[Tuple[int, Fraction]]] = {}
        for (r, c), v in other._entries.items():
            by_row.setdefault(r, []).append((c, v))
        out: Dict[Tuple[int, int], Fraction] = {}
        for (r, k), v in self._entries.items():
            for c, w in by_row.get(k, ()):
                out[(r, c)] = out.get((r, c), 0) + v * w
        return SparseMatrix(self.rows, other.cols, out)

    def is_zero(self) -> bool:
        return not self._entries

    def nnz(self) -> int:
        return len(self._entries)

    def rank(self) -> int:
        return len(row_reduce(self.row_vectors())[1])

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (self.rows, self.cols, self._entries) == (other.rows, other.cols, other._entries)

    __hash__ = None

    def __repr__(self) -> str:
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={len(self._entries)})"


class Subspace:
    """
    ambient 维空间中的子空间，基保存为规范约化阶梯形

    两个 Subspace 相等当且仅当规范基逐项相等。
    """

    def __init__(self, ambient: int, vectors: Iterable[Vector] = ()):
        self.ambient = ambient
        rref, pivots = row_reduce(vectors)
        for row in rref:
            if any(c >= ambient or c < 0 for c in row):
                raise ValueError(f"向量坐标超出环境维数 {ambient}")
        self.basis: Tuple[Vector, ...] = tuple(rref)
        self.pivots: Tuple[int, ...] = tuple(pivots)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, vector: Vector) -> Vector:
        """用规范基消去主元坐标，返回余项（线性）"""
        out = dict(clean(vector))
        for pc, row in zip(self.pivots, self.basis):
            x = out.get(pc)
            if x:
                add_into(out, row, -x)
        return out

    def contains(self, vector: Vector) -> bool:
        return not self.reduce(vector)

    def coordinates(self, vector: Vector) -> Tuple[Fraction, ...]:
        """在规范基下的坐标；不在子空间中则抛 ValueError"""
        coords = tuple(Fraction(vector.get(pc, 0)) for pc in self.pivots)
        residue = dict(clean(vector))
        for x, row in zip(coords, self.basis):
            add_into(residue, row, -x)
        if residue:
            raise ValueError("向量不在子空间内")
        return coords

    def __add__(self, other: 'Subspace') -> 'Subspace':
        return Subspace(self.ambient, list(self.basis) + list(other.basis))

    def contains_space(self, other: 'Subspace') -> bool:
        return all(self.contains(v) for v in other.basis)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self.basis == other.basis

    __hash__ = None

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"


def rank_kernel(matrix: SparseMatrix) -> Tuple[int, Subspace]:
    """
    秩与零空间

    Returns:
        (rank, kernel)，rank + dim(kernel) = cols
    """
    rref, pivots = row_reduce(matrix.row_vectors())
    pivot_set = set(pivots)
    kernel = []
    for free in range(matrix.cols):
        if free in pivot_set:
            continue
        v: Vector = {free: Fraction(1)}
        for pc, row in zip(pivots, rref):
            x = row.get(free)
            if x:
                v[pc] = -x
        kernel.append(v)
    return len(pivots), Subspace(matrix.cols, kernel)


def image(matrix: SparseMatrix) -> Subspace:
    """列空间"""
    return Subspace(matrix.rows, matrix.transpose().row_vectors())


@dataclass(frozen=True)
class HomologySlice:
    """某一次数处的同调：维数、闭链空间、边缘空间和代表元"""
    dim: int
    cycles: Subspace
    boundaries: Subspace
    representatives: Tuple[Vector, ...] = field(default=())

    def reduce(self, cycle: Vector) -> Tuple[Fraction, ...]:
        """把闭链写成代表元基下的坐标；边缘映到零"""
        if not self.cycles.contains(cycle):
            raise ComputationError("约化的向量不是闭链")
        residue = self.boundaries.reduce(cycle)
        coords = []
        for rep in self.representatives:
            pc = min(rep)
            coords.append(Fraction(residue.get(pc, 0)))
        check = dict(residue)
        for x, rep in zip(coords, self.representatives):
            add_into(check, rep, -x)
        if check:
            raise ComputationError("闭链不能用代表元表示，边缘空间与代表元不一致")
        return tuple(coords)

    @property
    def reduction(self) -> Callable[[Vector], Tuple[Fraction, ...]]:
        return self.reduce


def homology_at(d_in: SparseMatrix, d_out: SparseMatrix) -> HomologySlice:
    """
    三项序列 C^{n-1} -> C^n -> C^{n+1} 在中间处的同调

    Args:
        d_in: C^{n-1} -> C^n
        d_out: C^n -> C^{n+1}

    Returns:
        HomologySlice；代表元是闭链模边缘后的约化阶梯形，按环境基顺序排列
    """
    if d_in.rows != d_out.cols:
        raise ValueError(f"尺寸不匹配: d_in 落在 {d_in.rows} 维, d_out 定义在 {d_out.cols} 维")
    if not (d_out @ d_in).is_zero():
        raise CompositionNotZero("d_out ∘ d_in ≠ 0", rows=d_out.rows, cols=d_in.cols)

    _, cycles = rank_kernel(d_out)
    boundaries = image(d_in)
    # 闭链先消去边缘的主元，再取规范形
    residues = [boundaries.reduce(z) for z in cycles.basis]
    reps, _ = row_reduce(residues)
    dim = cycles.dim - boundaries.dim
    if len(reps) != dim:
        raise ComputationError("同调维数与代表元个数不一致", cycles=cycles.dim,
                               boundaries=boundaries.dim, reps=len(reps))
    logger.debug(f"[同调] 闭链 {cycles.dim} 维, 边缘 {boundaries.dim} 维, 同调 {dim} 维")
    return HomologySlice(dim, cycles, boundaries, tuple(reps))


def dense_matmul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> List[List[Fraction]]:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum((a[i][t] * b[t][j] for t in range(inner)), Fraction(0)) for j in range(cols)]
            for i in range(len(a))]


def inverse(dense: Sequence[Sequence[Fraction]]) -> List[List[Fraction]]:
    """
    方阵求逆

    Raises:
        NotInvertible: 非方阵或奇异
    """
    n = len(dense)
    if any(len(row) != n for row in dense):
        raise NotInvertible("不是方阵", shape=f"{n}x{len(dense[0]) if n else 0}")
    rows = []
    for i, row in enumerate(dense):
        r = {c: to_scalar(v) for c, v in enumerate(row) if v}
        r[n + i] = Fraction(1)
        rows.append(r)
    rref, pivots = row_reduce(rows)
    if pivots[:n] != list(range(n)) or len(pivots) != n:
        raise NotInvertible("矩阵奇异", size=n)
    return [[row.get(n + j, Fraction(0)) for j in range(n)] for row in rref]


def identity(n: int) -> List[List[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
