"""
dg Frobenius 代数模型

FrobeniusAlgebra 保存结构常数（乘法、微分、配对），validate() 检查全部公理并在
失败时一次性给出所有违反项；Casimir 元、余单位、Euler 示性类和 Calabi–Yau 映射
的检查也在这里。

基元素用下标表示，代数元素是稀疏字典 {下标: Fraction}。
"""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product as cartesian
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import (AxiomViolation, CheckLedger, NotConnected, NotFiniteRank,
                     NotInvertible, SchemaError)
from .graded_signs import GradedBasis, sign
from .logger import get_logger
from .rational_linalg import SparseMatrix, Subspace, Vector, add_into, clean, inverse, rank_kernel

logger = get_logger()

TensorVector = Dict[Tuple[int, ...], Fraction]


@dataclass
class AlgebraDescription:
    """解析器产出的代数描述（按名字索引，尚未校验）"""
    name: str
    degree_k: int
    basis: List[Tuple[str, int]]
    unit: str
    products: Dict[Tuple[str, str], Dict[str, Fraction]] = field(default_factory=dict)
    differential: Dict[str, Dict[str, Fraction]] = field(default_factory=dict)
    pairing: Dict[Tuple[str, str], Fraction] = field(default_factory=dict)


@dataclass(frozen=True)
class CasimirElement:
    """Σ c·e⊗f，e、f 为基下标"""
    terms: Tuple[Tuple[int, int, Fraction], ...]

    def as_tensor(self) -> TensorVector:
        out: TensorVector = {}
        for e, f, c in self.terms:
            add_into(out, {(e, f): c})
        return out

    def render(self, algebra: 'FrobeniusAlgebra') -> str:
        return render_tensor(algebra, self.as_tensor())


@dataclass(frozen=True)
class EulerCharacteristic:
    """χ(A) = μ(Δ(1)) ∈ A^k"""
    value: Tuple[Tuple[int, Fraction], ...]
    degree_k: int

    @property
    def is_zero(self) -> bool:
        return not self.value

    def coefficient(self) -> Fraction:
        """A^k 一维时的标量系数"""
        return self.value[0][1] if self.value else Fraction(0)

    def render(self, algebra: 'FrobeniusAlgebra') -> str:
        return algebra.render(dict(self.value))


class FrobeniusAlgebra:
    """
    有限维 dg Frobenius 代数

    不要直接构造，使用 validate(description)。乘法表是完整的：未给出的乘积为零，
    与单位元的乘积默认遵循单位律。
    """

    def __init__(self, name: str, basis: GradedBasis, degree_k: int, unit: int,
                 mult: Dict[Tuple[int, int], Vector], diff: Dict[int, Vector],
                 pairing: Dict[Tuple[int, int], Fraction]):
        self.name = name
        self.basis = basis
        self.degree_k = degree_k
        self.unit = unit
        self._mult = mult
        self._diff = diff
        self._pairing = pairing

    # ---------- 基本信息 ----------

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def k(self) -> int:
        return self.degree_k

    def degree(self, i: int) -> int:
        return self.basis.degree(i)

    def name_of(self, i: int) -> str:
        return self.basis.name(i)

    def index(self, name: str) -> int:
        return self.basis.index_of(name)

    def is_unit(self, i: int) -> bool:
        return i == self.unit

    @cached_property
    def bar_indices(self) -> Tuple[int, ...]:
        """Ā 的基（去掉单位元），规范顺序"""
        return tuple(i for i in range(self.dim) if i != self.unit)

    @cached_property
    def top_degree(self) -> int:
        return max(self.basis.degrees)

    @cached_property
    def is_simply_connected(self) -> bool:
        return all(self.degree(i) != 1 for i in self.bar_indices)

    @cached_property
    def min_bar_shift(self) -> Optional[int]:
        """Ā 中最小的平移次数 |a|-1；Ā 为零时返回 None"""
        shifts = [self.degree(i) - 1 for i in self.bar_indices]
        return min(shifts) if shifts else None

    @cached_property
    def has_differential(self) -> bool:
        return any(self._diff.values())

    # ---------- 结构映射 ----------

    def mul(self, i: int, j: int) -> Vector:
        return self._mult.get((i, j), {})

    def mul_vec(self, u: Vector, v: Vector) -> Vector:
        out: Vector = {}
        for i, a in u.items():
            for j, b in v.items():
                add_into(out, self.mul(i, j), a * b)
        return out

    def d(self, i: int) -> Vector:
        return self._diff.get(i, {})

    def d_vec(self, u: Vector) -> Vector:
        out: Vector = {}
        for i, a in u.items():
            add_into(out, self.d(i), a)
        return out

    def pair(self, i: int, j: int) -> Fraction:
        return self._pairing.get((i, j), Fraction(0))

    def pair_vec(self, u: Vector, v: Vector) -> Fraction:
        return sum((a * b * self.pair(i, j) for i, a in u.items() for j, b in v.items()), Fraction(0))

    def bar(self, u: Vector) -> Vector:
        """投射到 Ā（去掉单位分量）"""
        return {i: c for i, c in u.items() if i != self.unit and c}

    def unit_vector(self) -> Vector:
        return {self.unit: Fraction(1)}

    def gram(self) -> List[List[Fraction]]:
        return [[self.pair(j, l) for l in range(self.dim)] for j in range(self.dim)]

    @cached_property
    def casimir(self) -> CasimirElement:
        """
        Casimir 元 Δ(1) = Σ e_i⊗f_i

        由恒等式 a = (-1)^{|a|k} Σ⟨f_i, a⟩ e_i 解出：系数 c_{jl} = (-1)^{|b_j|k} (G^{-1})_{jl}
        """
        g_inv = inverse(self.gram())
        terms = []
        for j in range(self.dim):
            for l in range(self.dim):
                if g_inv[j][l]:
                    terms.append((j, l, sign(self.degree(j) * self.k) * g_inv[j][l]))
        return CasimirElement(tuple(terms))

    # ---------- 显示 ----------

    def render(self, u: Vector) -> str:
        return render_vector([(self.name_of(i), c) for i, c in sorted(u.items())])

    def __repr__(self) -> str:
        return f"FrobeniusAlgebra({self.name}, dim={self.dim}, k={self.k})"


def render_vector(terms: Sequence[Tuple[str, Fraction]]) -> str:
    """把 [(名字, 系数)] 渲染成 "2·x - x̄⊗1" 这样的字符串；零渲染成 "0" """
    parts = []
    for name, c in terms:
        if not c:
            continue
        mag = abs(c)
        body = name if mag == 1 else f"{mag}·{name}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts) if parts else "0"


def render_tensor(algebra: FrobeniusAlgebra, tensor: TensorVector) -> str:
    return render_vector([("⊗".join(algebra.name_of(i) for i in key), c)
                          for key, c in sorted(tensor.items())])


# ---------- 构造与校验 ----------

def _resolve(desc: AlgebraDescription) -> Tuple[GradedBasis, int]:
    if not desc.basis:
        raise NotFiniteRank("基为空", algebra=desc.name)
    basis = GradedBasis(tuple((n, int(d)) for n, d in desc.basis))
    unit = basis.index_of(desc.unit)
    return basis, unit


def _vector_from_names(basis: GradedBasis, entries: Dict[str, Fraction]) -> Vector:
    return clean({basis.index_of(n): Fraction(c) for n, c in entries.items()})


def build_algebra(desc: AlgebraDescription) -> FrobeniusAlgebra:
    """按描述构造代数（不做公理检查）"""
    basis, unit = _resolve(desc)
    n = len(basis)
    mult: Dict[Tuple[int, int], Vector] = {}
    given = {(basis.index_of(a), basis.index_of(b)): _vector_from_names(basis, v)
             for (a, b), v in desc.products.items()}
    for i in range(n):
        for j in range(n):
            if (i, j) in given:
                value = given[(i, j)]
            elif i == unit:
                value = {j: Fraction(1)}
            elif j == unit:
                value = {i: Fraction(1)}
            else:
                value = {}
            if value:
                mult[(i, j)] = value
    diff = {basis.index_of(a): _vector_from_names(basis, v) for a, v in desc.differential.items()}
    diff = {i: v for i, v in diff.items() if v}
    pairing = {(basis.index_of(a), basis.index_of(b)): Fraction(c) for (a, b), c in desc.pairing.items()}
    pairing = {key: c for key, c in pairing.items() if c}
    return FrobeniusAlgebra(desc.name, basis, int(desc.degree_k), unit, mult, diff, pairing)


def _vector_degree_mismatch(algebra: FrobeniusAlgebra, u: Vector, expected: int) -> bool:
    return any(algebra.degree(i) != expected for i in u)


def validate(desc: AlgebraDescription) -> FrobeniusAlgebra:
    """
    校验 Frobenius 代数公理

    Args:
        desc: 解析得到的代数描述

    Returns:
        校验通过的 FrobeniusAlgebra

    Raises:
        NotFiniteRank: 基为空，或存在次数高于 k 的基元素
        NotConnected: A^0 不是由单位元张成
        AxiomViolation: 列出全部违反的公理及见证
    """
    if desc.degree_k is None or int(desc.degree_k) <= 0:
        raise SchemaError('degree_k', f"degree_k 必须是正整数: {desc.degree_k}")
    A = build_algebra(desc)
    k = A.k
    n = A.dim
    nm = A.name_of
    violations: List[Dict[str, object]] = []

    def violate(axiom: str, *witness: int) -> None:
        violations.append({'axiom': axiom, 'witness': tuple(nm(i) for i in witness)})

    logger.info(f"[代数校验] {A.name}: dim={n}, k={k}")

    for i in range(n):
        if A.degree(i) < 0:
            violate('grading', i)
    if A.degree(A.unit) != 0:
        raise NotConnected(f"单位元 {nm(A.unit)} 的次数不是 0", algebra=A.name)
    extra = [nm(i) for i in A.bar_indices if A.degree(i) == 0]
    if extra:
        raise NotConnected(f"A^0 不是一维的，多出: {extra}", algebra=A.name)
    too_high = [nm(i) for i in range(n) if A.degree(i) > k]
    if too_high:
        raise NotFiniteRank(f"次数高于 k={k} 的基元素: {too_high}", algebra=A.name)

    # 乘法与微分的次数
    for (i, j), v in sorted(A._mult.items()):
        if _vector_degree_mismatch(A, v, A.degree(i) + A.degree(j)):
            violate('product-degree', i, j)
    for i, v in sorted(A._diff.items()):
        if _vector_degree_mismatch(A, v, A.degree(i) + 1):
            violate('differential-degree', i)

    # 单位律、结合律
    for i in range(n):
        if A.mul(A.unit, i) != {i: 1} or A.mul(i, A.unit) != {i: 1}:
            violate('unit', i)
    for i, j, l in cartesian(range(n), repeat=3):
        if A.mul_vec(A.mul(i, j), {l: Fraction(1)}) != A.mul_vec({i: Fraction(1)}, A.mul(j, l)):
            violate('associativity', i, j, l)

    # d² = 0 与 Leibniz
    for i in range(n):
        if A.d_vec(A.d(i)):
            violate('d-square', i)
    for i, j in cartesian(range(n), repeat=2):
        lhs = A.d_vec(A.mul(i, j))
        rhs = add_into(A.mul_vec(A.d(i), {j: Fraction(1)}),
                       A.mul_vec({i: Fraction(1)}, A.d(j)), Fraction(sign(A.degree(i))))
        if lhs != rhs:
            violate('leibniz', i, j)

    # 配对
    for (i, j), c in sorted(A._pairing.items()):
        if A.degree(i) + A.degree(j) != k:
            violate('pairing-degree', i, j)
    try:
        inverse(A.gram())
    except NotInvertible:
        violations.append({'axiom': 'non-degeneracy', 'witness': ('Gram',)})
    for i, j, l in cartesian(range(n), repeat=3):
        if A.pair_vec(A.mul(i, j), {l: Fraction(1)}) != A.pair_vec({i: Fraction(1)}, A.mul(j, l)):
            violate('invariance', i, j, l)
    for i, j in cartesian(range(n), repeat=2):
        if A.pair(i, j) != sign(A.degree(i) * A.degree(j)) * A.pair(j, i):
            violate('symmetry', i, j)
        lhs = A.pair_vec(A.d(i), {j: Fraction(1)})
        rhs = -sign(A.degree(i)) * A.pair_vec({i: Fraction(1)}, A.d(j))
        if lhs != rhs:
            violate('d-compatibility', i, j)

    if violations:
        logger.warning(f"[代数校验] {A.name}: {len(violations)} 项违反，第一项 {violations[0]}")
        first = violations[0]
        raise AxiomViolation(first['axiom'], first['witness'], violations)

    if not A.is_simply_connected:
        logger.warning(f"[代数校验] {A.name}: A^1 ≠ 0，不是单连通的，同调计算需要 p_cap")
    logger.info(f"[代数校验] {A.name}: 通过，Casimir = {A.casimir.render(A)}")
    return A


def casimir(A: FrobeniusAlgebra) -> CasimirElement:
    return A.casimir


def euler_char(A: FrobeniusAlgebra) -> EulerCharacteristic:
    """χ(A) = Σ e_i f_i"""
    out: Vector = {}
    for e, f, c in A.casimir.terms:
        add_into(out, A.mul(e, f), c)
    return EulerCharacteristic(tuple(sorted(out.items())), A.k)


def counit(A: FrobeniusAlgebra, a) -> Fraction:
    """ε(a) = ⟨a, 1⟩；a 可以是基下标或向量"""
    u = {a: Fraction(1)} if isinstance(a, int) else a
    return A.pair_vec(u, A.unit_vector())


# ---------- 张量辅助 ----------

def _unit(i: int) -> Vector:
    return {i: Fraction(1)}


def tensor(*vectors: Vector) -> TensorVector:
    """若干代数元素的张量积"""
    out: TensorVector = {(): Fraction(1)}
    for v in vectors:
        nxt: TensorVector = {}
        for key, c in out.items():
            for i, a in v.items():
                nxt[key + (i,)] = nxt.get(key + (i,), 0) + c * a
        out = clean(nxt)
    return out


def _tensor_sum(terms: Iterable[Tuple[Fraction, Tuple[Vector, ...]]]) -> TensorVector:
    out: TensorVector = {}
    for c, vectors in terms:
        if c:
            add_into(out, tensor(*vectors), Fraction(c))
    return out


def _check(ledger: CheckLedger, identity: str, witness, lhs, rhs) -> None:
    ledger.tick()
    if clean(lhs) != clean(rhs):
        residual = dict(lhs)
        add_into(residual, rhs, Fraction(-1))
        ledger.fail(identity, witness, residual)


def verify_casimir_identities(A: FrobeniusAlgebra, casimir: Optional[CasimirElement] = None,
                              strict: bool = False) -> CheckLedger:
    """
    检查 Casimir 元的五条恒等式以及两条带额外张量因子的推论

    Args:
        A: 已校验的代数
        casimir: 指定 Casimir 元（默认用 A.casimir，变异测试时传入篡改后的元素）
        strict: 失败时抛 IdentityFailure

    Returns:
        CheckLedger
    """
    cas = casimir or A.casimir
    k = A.k
    deg = A.degree
    ledger = CheckLedger('casimir-identities')

    for a in range(A.dim):
        da = deg(a)
        lhs: Vector = {}
        for e, f, c in cas.terms:
            add_into(lhs, _unit(e), sign(da * k) * c * A.pair(f, a))
        _check(ledger, 'casimir-1', A.name_of(a), lhs, _unit(a))
        lhs = {}
        for e, f, c in cas.terms:
            add_into(lhs, _unit(f), sign(k - da) * c * A.pair(e, a))
        _check(ledger, 'casimir-1', A.name_of(a), lhs, _unit(a))

    lhs = _tensor_sum((c, (_unit(e), _unit(f))) for e, f, c in cas.terms)
    rhs = _tensor_sum((sign(deg(e) * deg(f) + k) * c, (_unit(f), _unit(e))) for e, f, c in cas.terms)
    _check(ledger, 'casimir-2', 'Δ(1)', lhs, rhs)

    lhs = _tensor_sum((c, (A.d(e), _unit(f))) for e, f, c in cas.terms)
    rhs = _tensor_sum((-sign(deg(e)) * c, (_unit(e), A.d(f))) for e, f, c in cas.terms)
    _check(ledger, 'casimir-3', 'Δ(1)', lhs, rhs)

    for a in range(A.dim):
        da = deg(a)
        lhs = _tensor_sum((c, (A.mul(a, e), _unit(f))) for e, f, c in cas.terms)
        rhs = _tensor_sum((sign(da * k) * c, (_unit(e), A.mul(f, a))) for e, f, c in cas.terms)
        _check(ledger, 'casimir-4', A.name_of(a), lhs, rhs)
        lhs = _tensor_sum((sign(deg(e) * da) * c, (A.mul(e, a), _unit(f))) for e, f, c in cas.terms)
        rhs = _tensor_sum((sign(deg(e) * da) * c, (_unit(e), A.mul(a, f))) for e, f, c in cas.terms)
        _check(ledger, 'casimir-5', A.name_of(a), lhs, rhs)

    # 中间插入一个次数为 |x| 的因子（取 A 自身的基元素作为 x）
    for a, x in cartesian(range(A.dim), repeat=2):
        da, dx = deg(a), deg(x)
        witness = f"a={A.name_of(a)}, x={A.name_of(x)}"
        lhs = _tensor_sum((sign(dx * deg(e)) * c, (A.mul(a, e), _unit(x), _unit(f)))
                          for e, f, c in cas.terms)
        rhs = _tensor_sum((sign(dx * deg(e) + da * (dx + k)) * c, (_unit(e), _unit(x), A.mul(f, a)))
                          for e, f, c in cas.terms)
        _check(ledger, 'casimir-remark-1', witness, lhs, rhs)
        lhs = _tensor_sum((sign(deg(e) * (da + dx)) * c, (A.mul(e, a), _unit(x), _unit(f)))
                          for e, f, c in cas.terms)
        rhs = _tensor_sum((sign(deg(e) * (da + dx) + da * dx) * c, (_unit(e), _unit(x), A.mul(a, f)))
                          for e, f, c in cas.terms)
        _check(ledger, 'casimir-remark-2', witness, lhs, rhs)

    logger.info(f"[Casimir] {A.name}: 检查 {ledger.checked} 项, 失败 {len(ledger.failures)} 项")
    if strict:
        ledger.raise_if_failed()
    return ledger


def coalgebra_check(A: FrobeniusAlgebra, casimir: Optional[CasimirElement] = None,
                    strict: bool = False) -> CheckLedger:
    """
    余乘 Δ(a) = Σ e_i ⊗ f_i a 的余结合性、余单位性以及配对关系
    """
    cas = casimir or A.casimir
    k = A.k
    deg = A.degree
    ledger = CheckLedger('coalgebra')

    def delta(u: Vector) -> TensorVector:
        return _tensor_sum((c * a, (_unit(e), A.mul(f, i)))
                           for i, a in u.items() for e, f, c in cas.terms)

    def eps(u: Vector) -> Fraction:
        return counit(A, u)

    for a, b in cartesian(range(A.dim), repeat=2):
        total = sum((sign(deg(e) * k) * c * A.pair(f, a) * A.pair(e, b) for e, f, c in cas.terms),
                    Fraction(0))
        ledger.tick()
        if total != A.pair(a, b):
            ledger.fail('pairing-relation', f"({A.name_of(a)}, {A.name_of(b)})", total - A.pair(a, b))

    for a in range(A.dim):
        image = delta(_unit(a))
        right: Vector = {}
        left: Vector = {}
        for (u, v), c in image.items():
            add_into(right, _unit(u), sign(k * deg(u)) * c * eps(_unit(v)))
            add_into(left, _unit(v), c * eps(_unit(u)))
        _check(ledger, 'counit-right', A.name_of(a), right, _unit(a))
        _check(ledger, 'counit-left', A.name_of(a), left, {a: Fraction(sign(k))})

    d1 = delta(A.unit_vector())
    lhs: TensorVector = {}
    rhs: TensorVector = {}
    for (u, v), c in d1.items():
        for (x, y), c2 in delta(_unit(u)).items():
            add_into(lhs, {(x, y, v): Fraction(1)}, c * c2)
        for (x, y), c2 in delta(_unit(v)).items():
            add_into(rhs, {(u, x, y): Fraction(1)}, sign(k) * sign(k * deg(u)) * c * c2)
    _check(ledger, 'coassociativity', 'Δ(1)', lhs, rhs)

    if strict:
        ledger.raise_if_failed()
    return ledger


def calabi_yau_map(A: FrobeniusAlgebra, a: int, b: Vector,
                   casimir: Optional[CasimirElement] = None) -> TensorVector:
    """Φ_a(b) = Σ (-1)^{|e_i||a|} b e_i a ⊗ f_i"""
    cas = casimir or A.casimir
    return _tensor_sum((sign(A.degree(e) * A.degree(a)) * c,
                        (A.mul_vec(A.mul_vec(b, _unit(e)), _unit(a)), _unit(f)))
                       for e, f, c in cas.terms)


def _left(A: FrobeniusAlgebra, c: int, z: TensorVector) -> TensorVector:
    out: TensorVector = {}
    for (u, v), x in z.items():
        for w, y in A.mul(c, u).items():
            add_into(out, {(w, v): Fraction(1)}, x * y)
    return out


def _right(A: FrobeniusAlgebra, z: TensorVector, c: int) -> TensorVector:
    out: TensorVector = {}
    for (u, v), x in z.items():
        for w, y in A.mul(v, c).items():
            add_into(out, {(u, w): Fraction(1)}, x * y)
    return out


def _d_tensor(A: FrobeniusAlgebra, z: TensorVector) -> TensorVector:
    out: TensorVector = {}
    for (u, v), x in z.items():
        for w, y in A.d(u).items():
            add_into(out, {(w, v): Fraction(1)}, x * y)
        for w, y in A.d(v).items():
            add_into(out, {(u, w): Fraction(1)}, sign(A.degree(u)) * x * y)
    return out


def calabi_yau_check(A: FrobeniusAlgebra, casimir: Optional[CasimirElement] = None,
                     strict: bool = False) -> CheckLedger:
    """
    检查 a ↦ Φ_a 给出双模同构 s^{-k}A ≅ Hom_{A^e}(A, A⊗A)

    逐项检查左线性、扭曲右线性 Φ_a(bc) = (-1)^{|c|(|a|+k)} Φ_a(b)c、与微分相容（差一个
    全局符号），以及 a ↦ Φ_a(1) 单射且像恰为双模映射空间。
    """
    cas = casimir or A.casimir
    k = A.k
    deg = A.degree
    n = A.dim
    ledger = CheckLedger('calabi-yau')

    for a, b, c in cartesian(range(n), repeat=3):
        witness = f"a={A.name_of(a)}, b={A.name_of(b)}, c={A.name_of(c)}"
        phi_b = calabi_yau_map(A, a, _unit(b), cas)
        _check(ledger, 'cy-left-linear', witness,
               calabi_yau_map(A, a, A.mul(c, b), cas), _left(A, c, phi_b))
        rhs = _right(A, phi_b, c)
        rhs = {key: sign(deg(c) * (deg(a) + k)) * x for key, x in rhs.items()}
        _check(ledger, 'cy-right-twisted', witness, calabi_yau_map(A, a, A.mul(b, c), cas), rhs)

    # Φ_a(b) 把 b 写在 Φ_a 左边，Φ_a 越过 b 带 (-1)^{|b|(|a|+k)}；
    # 于是 D(Φ_a) = ±Φ_{da} 写成 d(Φ_a(b)) - Φ_a(db) = ±(-1)^{|b|} Φ_{da}(b)，符号全局一致
    global_sign = None
    for a, b in cartesian(range(n), repeat=2):
        lhs = _d_tensor(A, calabi_yau_map(A, a, _unit(b), cas))
        add_into(lhs, calabi_yau_map(A, a, A.d(b), cas), Fraction(-1))
        target: TensorVector = {}
        for w, y in A.d(a).items():
            add_into(target, calabi_yau_map(A, w, _unit(b), cas), sign(deg(b)) * y)
        ledger.tick()
        if not lhs and not target:
            continue
        s = 1 if lhs == target else (-1 if lhs == {key: -v for key, v in target.items()} else 0)
        if s == 0 or (global_sign is not None and s != global_sign):
            ledger.fail('cy-differential', f"a={A.name_of(a)}, b={A.name_of(b)}", lhs)
        elif global_sign is None:
            global_sign = s
    if global_sign is not None:
        ledger.notes['differential_sign'] = global_sign

    # 单射与像的维数
    index = {(u, v): u * n + v for u in range(n) for v in range(n)}
    images = [{index[key]: x for key, x in calabi_yau_map(A, a, A.unit_vector(), cas).items()}
              for a in range(n)]
    rank = Subspace(n * n, images).dim
    ledger.tick()
    if rank != n:
        ledger.fail('cy-injective', f"rank={rank}", f"dim A={n}")

    solution_dim = 0
    for total in range(0, 2 * A.top_degree + 1):
        cells = [(u, v) for u in range(n) for v in range(n) if deg(u) + deg(v) == total]
        if not cells:
            continue
        col = {cell: j for j, cell in enumerate(cells)}
        rows = []
        for c in range(n):
            # c·z - (-1)^{|z||c|} z·c = 0，按 A⊗A 的每个坐标写成一行
            equations: Dict[Tuple[int, int], Vector] = {}
            for cell in cells:
                z = {cell: Fraction(1)}
                diff = _left(A, c, z)
                add_into(diff, _right(A, z, c), Fraction(-sign(total * deg(c))))
                for key, x in diff.items():
                    equations.setdefault(key, {})[col[cell]] = x
            rows.extend(equations.values())
        matrix = SparseMatrix(len(rows), len(cells),
                              {(r, j): x for r, row in enumerate(rows) for j, x in row.items()})
        solution_dim += rank_kernel(matrix)[1].dim
    ledger.tick()
    ledger.notes['bimodule_maps_dim'] = solution_dim
    if solution_dim != rank:
        ledger.fail('cy-image', f"bimodule maps dim={solution_dim}", f"image dim={rank}")

    logger.info(f"[Calabi-Yau] {A.name}: 检查 {ledger.checked} 项, 失败 {len(ledger.failures)} 项")
    if strict:
        ledger.raise_if_failed()
    return ledger
