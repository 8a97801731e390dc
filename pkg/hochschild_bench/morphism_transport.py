"""
dg 代数同态与 HH_sg 的传递

φ: A -> B 诱导 C_sg(A, A) -> C_sg(A, B) <- C_sg(B, B)，两个箭头在 φ 是拟同构时
都是拟同构；HH_sg(A) -> HH_sg(B) 取为 HH_sg(φ, B)^{-1} ∘ HH_sg(A, φ)。

C_sg(A, B) 用层数 P 的有限复形 C^*(A, Ω^P(B)) 实现，P 由稳定性探测决定。
HH_sg(A, A)、HH_sg(B, B) 仍由 D^* 计算，经 ι 抬升到层数 P 后与之比较。
"""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Dict, List, Sequence, Tuple

from .algebra_io import MorphismDescription, load_algebra, parse_morphism
from .errors import (CheckLedger, NotAnAlgebraMap, NotInvertible, NotSimplyConnected, PreconditionError,
                     SchemaError, WindowTooSmall)
from .frobenius_algebra import FrobeniusAlgebra, euler_char
from .hochschild_complexes import (Coefficients, CochainFamily, HomologyReport, LeveledCochain, Window,
                                   bar_words, combo_add, evaluate_slots, hh_cohomology, hh_homology,
                                   leveled_cohomology, max_level_degree, words_from_slots)
from .chain_products import theta_family
from .logger import get_logger
from .rational_linalg import (SparseMatrix, Subspace, Vector, add_into, clean, dense_matmul, homology_at,
                              identity, inverse)
from .tate_singular import (SgHomologyReport, TateElement, cup_on_hhsg, iota, tate_homology)

logger = get_logger()

Matrix = List[List[Fraction]]


# ---------- 同态 ----------

@dataclass(frozen=True, eq=False)
class DgMorphism:
    """φ: A -> B，images[i] 是第 i 个基元素的像"""
    source: FrobeniusAlgebra
    target: FrobeniusAlgebra
    images: Tuple[Vector, ...]
    name: str = ''
    quasi_iso: bool = False

    def image(self, a: int) -> Vector:
        return self.images[a]

    def apply(self, v: Vector) -> Vector:
        out: Vector = {}
        for a, c in v.items():
            add_into(out, self.images[a], c)
        return out

    def matrix(self) -> SparseMatrix:
        columns = [dict(v) for v in self.images]
        return SparseMatrix.from_columns(self.target.dim, columns)

    @cached_property
    def coefficients(self) -> Coefficients:
        return Coefficients(self.source, self.target, tuple(dict(v) for v in self.images))

    def __repr__(self) -> str:
        return f"DgMorphism({self.name or '?'}: {self.source.name} -> {self.target.name})"


def morphism_from_description(desc: MorphismDescription, source: FrobeniusAlgebra,
                              target: FrobeniusAlgebra) -> DgMorphism:
    """
    按名字解析映射表：未列出的单位元映到单位元，其他未列出的基元素映到零
    """
    images: List[Vector] = []
    for name in desc.entries:
        if name not in source.basis.names:
            raise SchemaError('entries', f"{name} 不是 {source.name} 的基元素")
    for i in range(source.dim):
        name = source.name_of(i)
        if name in desc.entries:
            images.append(clean({target.index(b): Fraction(c) for b, c in desc.entries[name].items()}))
        elif i == source.unit:
            images.append({target.unit: Fraction(1)})
        else:
            images.append({})
    return DgMorphism(source, target, tuple(images), desc.name)


def identity_morphism(A: FrobeniusAlgebra) -> DgMorphism:
    return DgMorphism(A, A, tuple({i: Fraction(1)} for i in range(A.dim)), f"id_{A.name}", quasi_iso=True)


def _degree_homology(A: FrobeniusAlgebra, j: int):
    basis = [i for i in range(A.dim) if A.degree(i) == j]
    below = [i for i in range(A.dim) if A.degree(i) == j - 1]
    above = [i for i in range(A.dim) if A.degree(i) == j + 1]
    pos = {i: r for r, i in enumerate(basis)}
    pos_above = {i: r for r, i in enumerate(above)}
    d_in = SparseMatrix.from_columns(len(basis), [{pos[t]: c for t, c in A.d(i).items()} for i in below])
    d_out = SparseMatrix.from_columns(len(above), [{pos_above[t]: c for t, c in A.d(i).items()} for i in basis])
    return basis, pos, homology_at(d_in, d_out)


def _is_quasi_iso(phi: DgMorphism) -> bool:
    A, B = phi.source, phi.target
    for j in range(0, max(A.top_degree, B.top_degree) + 1):
        basis_a, _, h_a = _degree_homology(A, j)
        _, pos_b, h_b = _degree_homology(B, j)
        if h_a.dim != h_b.dim:
            return False
        columns = []
        for rep in h_a.representatives:
            image = phi.apply({basis_a[r]: c for r, c in rep.items()})
            coords = h_b.reduce({pos_b[t]: c for t, c in image.items()})
            columns.append({r: c for r, c in enumerate(coords) if c})
        if SparseMatrix.from_columns(h_b.dim, columns).rank() != h_a.dim:
            return False
    return True


def validate_morphism(phi: DgMorphism) -> DgMorphism:
    """
    检查 φ(1) = 1、保持次数、φ∘μ = μ∘(φ⊗φ)、φ∘d = d∘φ，并判定是否拟同构

    Raises:
        NotAnAlgebraMap: 第一条不成立的定律与见证
    """
    A, B = phi.source, phi.target
    if phi.image(A.unit) != {B.unit: Fraction(1)}:
        raise NotAnAlgebraMap('unit', A.name_of(A.unit))
    for i in range(A.dim):
        if any(B.degree(t) != A.degree(i) for t in phi.image(i)):
            raise NotAnAlgebraMap('degree', A.name_of(i))
    for i in range(A.dim):
        for j in range(A.dim):
            if phi.apply(A.mul(i, j)) != B.mul_vec(phi.image(i), phi.image(j)):
                raise NotAnAlgebraMap('multiplicative', (A.name_of(i), A.name_of(j)))
    for i in range(A.dim):
        if phi.apply(A.d(i)) != B.d_vec(phi.image(i)):
            raise NotAnAlgebraMap('differential', A.name_of(i))
    checked = DgMorphism(A, B, phi.images, phi.name, quasi_iso=_is_quasi_iso(phi))
    logger.info(f"[同态] {checked!r}: 拟同构={checked.quasi_iso}")
    return checked


def compose_morphisms(phi: DgMorphism, psi: DgMorphism) -> DgMorphism:
    """ψ∘φ"""
    if phi.target is not psi.source:
        raise PreconditionError(f"{phi!r} 与 {psi!r} 不可复合")
    images = tuple(clean(psi.apply(v)) for v in phi.images)
    name = f"{psi.name}∘{phi.name}"
    return validate_morphism(DgMorphism(phi.source, psi.target, images, name))


def load_morphism(path) -> Tuple[DgMorphism, str]:
    """读取同态文件，返回（校验后的同态, 方向）"""
    desc = parse_morphism(path)
    phi = morphism_from_description(desc, load_algebra(desc.source), load_algebra(desc.target))
    return validate_morphism(phi), desc.direction


# ---------- 系数在 B 中的模型 ----------

@dataclass
class CoefficientModel:
    """C^*(A, Ω^P(B)) 及其窗口上同调"""
    coeffs: Coefficients
    level: int
    window: Window
    report: HomologyReport

    def dims(self) -> Dict[int, int]:
        return self.report.dims()


def _family_vector(report: HomologyReport, n: int, family: CochainFamily) -> Tuple[Fraction, ...]:
    return report.reduce_vector(n, report.complex.to_vector(n, family.keys()))


def _theta_is_iso(co: Coefficients, window: Window, here: HomologyReport, there: HomologyReport) -> bool:
    for n in window.degrees():
        if here.dim(n) != there.dim(n):
            return False
        columns = []
        for rep in here.representatives(n):
            coords = _family_vector(there, n, theta_family(rep))
            columns.append({i: c for i, c in enumerate(coords) if c})
        if SparseMatrix.from_columns(there.dim(n), columns).rank() != here.dim(n):
            return False
    return True


def probe_level(co: Coefficients, window: Window, expected: Dict[int, int], min_level: int = 0,
                max_level: int = 12) -> CoefficientModel:
    """
    从 min_level 起抬高 P，直到 θ: H^n(P) -> H^n(P+1) 在窗口内每个次数都是同构，
    且维数等于 expected

    Raises:
        WindowTooSmall: max_level 以内找不到稳定的层数
    """
    here = leveled_cohomology(co, window, min_level)
    for P in range(min_level, max_level + 1):
        there = leveled_cohomology(co, window, P + 1)
        if here.dims() == expected and _theta_is_iso(co, window, here, there):
            logger.info(f"[稳定性探测] {co.source.name}->{co.target.name}: P={P}")
            return CoefficientModel(co, P, window, here)
        here = there
    raise WindowTooSmall(f"层数 {min_level}..{max_level} 内 θ 不稳定，请加大 max_stable_level 或缩小窗口",
                         source=co.source.name, target=co.target.name, max_level=max_level)


def csg_with_coefficients(phi: DgMorphism, window: Window, min_level: int = 0,
                          max_level: int = 12) -> CoefficientModel:
    """C_sg(A, B) 的有限模型；维数与 HH_sg(B) 比较"""
    A, B = phi.source, phi.target
    for X in (A, B):
        if not X.is_simply_connected:
            raise NotSimplyConnected(f"{X.name} 不是单连通的", algebra=X.name)
    expected = tate_homology(B, window).dims()
    return probe_level(phi.coefficients, window, expected, min_level, max_level)


def postcompose(phi: DgMorphism, family: CochainFamily) -> CochainFamily:
    """φ_*: C^*(A, Ω^P(A)) -> C^*(A, Ω^P(B))，在每个输出槽位上作用 φ"""
    B = phi.target
    co = phi.coefficients
    components = {}
    for m, f in family.items():
        table = {}
        for x, value in f.table.items():
            image = {}
            for w, c in value.items():
                combo_add(image, words_from_slots(B, [phi.image(b) for b in w.bars], phi.image(w.tail), c))
            table[x] = image
        components[m] = LeveledCochain(co, m, family.p, family.degree, table, check=False)
    return CochainFamily(co, family.p, family.degree, components)


def precompose(phi: DgMorphism, family: CochainFamily) -> CochainFamily:
    """φ^*: C^*(B, Ω^P(B)) -> C^*(A, Ω^P(B))，输入经 φ̄ 送进 B"""
    A, B = phi.source, phi.target
    co = phi.coefficients
    # 输入的平移次数不超过输出词的最大次数减去上链次数
    bound = max_level_degree(B, family.p) - family.degree
    components = {}
    for m, g in family.items():
        table = {}
        for shifted in range(0, bound + 1):
            for x in bar_words(A, m, shifted):
                value = evaluate_slots(g, [phi.image(a) for a in x])
                if value:
                    table[x] = value
        components[m] = LeveledCochain(co, m, family.p, family.degree, table, check=False)
    return CochainFamily(co, family.p, family.degree, components)


# ---------- 传递同构 ----------

@dataclass
class TransportReport:
    """
    HH_sg(A) -> HH_sg(B) 的逐次数矩阵（D 的代表元基下）

    forward: HH_sg(A) -> H(C_sg(A, B))；backward: HH_sg(B) -> H(C_sg(A, B))；
    matrices = backward^{-1} ∘ forward
    """
    source: str
    target: str
    window: Window
    level: int
    forward: Dict[int, Matrix] = field(default_factory=dict)
    backward: Dict[int, Matrix] = field(default_factory=dict)
    matrices: Dict[int, Matrix] = field(default_factory=dict)

    def rows(self) -> List[List[str]]:
        out = []
        for n, m in sorted(self.matrices.items()):
            for r, row in enumerate(m):
                out.append([str(n), str(r), " ".join(str(c) for c in row)])
        return out


def _columns_to_dense(columns: List[Tuple[Fraction, ...]], rows: int) -> Matrix:
    return [[Fraction(columns[j][i]) for j in range(len(columns))] for i in range(rows)]


def _lift(sg: HomologyReport, n: int, level: int) -> List[CochainFamily]:
    """HH_sg 的代表元经 ι 抬到层数 level"""
    return [iota(t).at_level(level) for t in sg.representatives(n)]


def _iota_level(sg: HomologyReport, window: Window) -> int:
    level = 0
    for n in window.degrees():
        for t in sg.representatives(n):
            level = max(level, iota(t).level)
    return level


def transport_iso(phi: DgMorphism, window: Window, max_level: int = 12) -> TransportReport:
    """
    HH_sg(φ, B)^{-1} ∘ HH_sg(A, φ)

    Raises:
        NotInvertible: φ 不是拟同构（事先判定），或窗口内维数不等
        WindowTooSmall: 层数探测失败
    """
    A, B = phi.source, phi.target
    if A.k != B.k:
        raise PreconditionError(f"{A.name} 与 {B.name} 的次数 k 不同", source_k=A.k, target_k=B.k)
    if not phi.quasi_iso:
        raise NotInvertible(f"{phi!r} 不是拟同构", morphism=phi.name)
    sg_a, sg_b = tate_homology(A, window), tate_homology(B, window)
    for n in window.degrees():
        if sg_a.dim(n) != sg_b.dim(n):
            raise NotInvertible(f"次数 {n}: dim HH_sg({A.name}) ≠ dim HH_sg({B.name})", degree=n)
    start = max(_iota_level(sg_a, window), _iota_level(sg_b, window))
    mixed = csg_with_coefficients(phi, window, start, max(max_level, start))
    P = mixed.level

    report = TransportReport(A.name, B.name, window, P)
    for n in window.degrees():
        dim = sg_a.dim(n)
        if dim == 0:
            report.forward[n] = report.backward[n] = report.matrices[n] = []
            continue
        fam_a = _lift(sg_a, n, P)
        fam_b = _lift(sg_b, n, P)
        forward = [_family_vector(mixed.report, n, postcompose(phi, f)) for f in fam_a]
        backward = [_family_vector(mixed.report, n, precompose(phi, g)) for g in fam_b]
        fwd = _columns_to_dense(forward, mixed.report.dim(n))
        bwd = _columns_to_dense(backward, mixed.report.dim(n))
        try:
            inv = inverse(bwd)
        except NotInvertible:
            raise WindowTooSmall(f"次数 {n}: 层数 {P} 上 HH_sg({B.name}) 的像不可逆", degree=n, level=P)
        report.forward[n], report.backward[n] = fwd, bwd
        report.matrices[n] = dense_matmul(inv, fwd)
    logger.info(f"[传递] {phi!r}: 层数 P={P}, 次数 {list(window.degrees())}")
    return report


# ---------- GH 不变性 ----------

@dataclass
class InvarianceReport:
    """沿 zig-zag 复合的同构、χ 奇偶性、约化子空间与 GH 乘法表的比较"""
    source: str
    target: str
    window: Window
    composite: Dict[int, Matrix] = field(default_factory=dict)
    mapped_table: Dict[Tuple[Tuple[int, int], Tuple[int, int]], Tuple[int, Tuple[Fraction, ...]]] = \
        field(default_factory=dict)
    ledger: CheckLedger = field(default_factory=lambda: CheckLedger('gh-invariance'))

    @property
    def passed(self) -> bool:
        return self.ledger.passed


def _apply(matrix: Matrix, coords: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    return tuple(sum((row[j] * Fraction(coords[j]) for j in range(len(coords))), Fraction(0)) for row in matrix)


def _reduced_classes(A: FrobeniusAlgebra, sg: SgHomologyReport, n: int) -> List[Tuple[Fraction, ...]]:
    """HH_sg^n 中由约化 HH 代表元 (0, α) 给出的类的坐标"""
    chain_degree = n - A.k + 1
    if chain_degree < 1:
        return []
    chains = hh_homology(A, Window(chain_degree, chain_degree, sg.window.p_cap), reduced=True)
    return [sg.reduce(n, TateElement.of_chain(alpha)) for alpha in chains.representatives(chain_degree)]


def _cohomology_classes(A: FrobeniusAlgebra, sg: SgHomologyReport, n: int) -> List[Tuple[Fraction, ...]]:
    coh = hh_cohomology(A, Window(n, n, sg.window.p_cap))
    return [sg.reduce(n, TateElement.of_cochain(f)) for f in coh.representatives(n)]


def _span(ambient: int, vectors: Sequence[Sequence[Fraction]]) -> Subspace:
    return Subspace(ambient, [{i: c for i, c in enumerate(v) if c} for v in vectors])


def gh_invariance_check(steps: Sequence[Tuple[DgMorphism, str]], window: Window,
                        max_level: int = 12, strict: bool = False) -> InvarianceReport:
    """
    沿 zig-zag 复合传递同构（backward 箭头在上同调上求逆），检查：
    χ 的奇偶性一致、约化 HH 子空间被映满、GH 乘积在窗口内逐项保持

    Args:
        steps: [(同态, 'forward' / 'backward')]；forward 从 φ.source 走到 φ.target

    Raises:
        PreconditionError: 箭头首尾不相接，或 k 不同
    """
    if not steps:
        raise PreconditionError("zig-zag 为空")
    first, direction = steps[0]
    current = first.source if direction == 'forward' else first.target
    start = current
    composite: Dict[int, Matrix] = {}
    for n in window.degrees():
        composite[n] = identity(tate_homology(start, window).dim(n))
    for phi, direction in steps:
        if phi.source.k != phi.target.k:
            raise PreconditionError(f"{phi!r} 两端的 k 不同", source_k=phi.source.k, target_k=phi.target.k)
        here, there = (phi.source, phi.target) if direction == 'forward' else (phi.target, phi.source)
        if here is not current:
            raise PreconditionError(f"zig-zag 在 {phi!r} 处不相接（当前 {current.name}）")
        step = transport_iso(phi, window, max_level)
        for n in window.degrees():
            m = step.matrices[n]
            if direction == 'backward' and m:
                m = inverse(m)
            composite[n] = dense_matmul(m, composite[n]) if m else []
        current = there
    end = current

    report = InvarianceReport(start.name, end.name, window, composite)
    ledger = report.ledger
    ledger.tick()
    if euler_char(start).is_zero != euler_char(end).is_zero:
        ledger.fail('chi-parity', f"χ({start.name}) 与 χ({end.name}) 的零性不同")
    ledger.notes['chi_zero'] = euler_char(start).is_zero

    sg_a = SgHomologyReport(start, window, tate_homology(start, window))
    sg_b = SgHomologyReport(end, window, tate_homology(end, window))
    reduced_a: Dict[int, List[Tuple[Fraction, ...]]] = {}
    for n in window.degrees():
        T = composite[n]
        reduced_a[n] = _reduced_classes(start, sg_a, n)
        if not T:
            continue
        mapped = _span(sg_b.dim(n), [_apply(T, v) for v in reduced_a[n]])
        target = _span(sg_b.dim(n), _reduced_classes(end, sg_b, n))
        ledger.tick()
        if mapped != target:
            if euler_char(end).is_zero:
                summand = _span(sg_b.dim(n), _cohomology_classes(end, sg_b, n))
                if mapped + summand == target + summand:
                    ledger.notes[f"reduced_{n}"] = "equal modulo the HH^* summand"
                    continue
            ledger.fail('reduced-subspace', f"n={n}", f"{mapped!r} vs {target!r}")

    for n1 in window.degrees():
        for n2 in window.degrees():
            n = n1 + n2
            if n not in window:
                continue
            for i, x in enumerate(reduced_a[n1]):
                for j, y in enumerate(reduced_a[n2]):
                    ledger.tick()
                    product = cup_on_hhsg(sg_a, n1, x, n2, y)
                    lhs = _apply(composite[n], product) if composite[n] else ()
                    rhs = cup_on_hhsg(sg_b, n1, _apply(composite[n1], x), n2, _apply(composite[n2], y)) \
                        if composite[n1] and composite[n2] else tuple(Fraction(0) for _ in range(sg_b.dim(n)))
                    report.mapped_table[((n1, i), (n2, j))] = (n, lhs)
                    if tuple(lhs) != tuple(rhs):
                        ledger.fail('gh-product', f"({n1}:{i}) · ({n2}:{j})", f"T(x⋆y)={lhs}, T(x)⋆T(y)={rhs}")
    logger.info(f"[GH 不变性] {start.name} -> {end.name}: 检查 {ledger.checked} 项, 失败 {len(ledger.failures)} 项")
    if strict:
        ledger.raise_if_failed()
    return report


def load_zigzag(paths: Sequence) -> List[Tuple[DgMorphism, str]]:
    """按顺序读取同态文件，方向取自文件"""
    return [load_morphism(Path(p)) for p in paths]
