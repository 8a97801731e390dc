"""
Tate–Hochschild 复形与奇异 Hochschild 上同调

D^n(A, A) = C^n(A, A) ⊕ C_{n-k+1}(A, A)，微分
    d(f, α) = (δf - γ(α 在 p=0 的部分), (-1)^{1-k} ∂α)

奇异上链用 StableCochain 表示：某个层数 P 上的上链族，两个代表元在 θ 抬升到同一层后比较。
ι: D -> C_sg、Π: C_sg -> D、H: C_sg -> C_sg 构成同伦收缩，HH_sg 一律由 D 计算。
"""
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .chain_products import (StarTable, build_star_table, family_bracket, family_cup, gamma_vector, star,
                             theta_family, theta_power)
from .errors import (CheckLedger, ComputationError, ExactnessFailure, NotSimplyConnected, WindowOverflow)
from .frobenius_algebra import FrobeniusAlgebra, euler_char
from .graded_signs import sign
from .hochschild_complexes import (ONE, ChainElement, Combo, CochainFamily, GradedComplex, HomologyReport,
                                   LeveledCochain, Window, Word, _boundary_word, _homology_report, _unit,
                                   act_left, chain_boundary, chain_words, cochain_keys, combo_add, counit_first,
                                   family_differential, hh_cohomology, hh_homology, identity_coefficients,
                                   is_approximate, leveled_complex, omega_cochain_differential, prepend_bar,
                                   require_finite, word_degree)
from .logger import get_logger
from .rational_linalg import SparseMatrix, Vector, clean, image, rank_kernel

logger = get_logger()

TateKey = Tuple


def gamma(A: FrobeniusAlgebra, a: Union[int, Vector]) -> Vector:
    """γ(a) = Σ (-1)^{|f_i||a|} e_i a f_i，次数 |a|+k；γ(1) = χ(A)"""
    return gamma_vector(A, _unit(a) if isinstance(a, int) else a)


# ---------- D^* ----------

class TateElement:
    """
    D^n(A, A) 中的元素

    cochain: p = 0 的上链族（次数 n）；chain: C_{n-k+1}(A, A) 中的链
    """

    __slots__ = ('algebra', 'degree', 'cochain', 'chain')

    def __init__(self, algebra: FrobeniusAlgebra, degree: int,
                 cochain: Optional[CochainFamily] = None, chain: Optional[ChainElement] = None):
        co = identity_coefficients(algebra)
        self.algebra = algebra
        self.degree = degree
        self.cochain = cochain if cochain is not None else CochainFamily(co, 0, degree)
        self.chain = chain if chain is not None else ChainElement.zero(algebra)
        if self.cochain.p != 0:
            raise ComputationError(f"D^* 的上链部分必须在 p=0，收到 p={self.cochain.p}")
        if not self.cochain.is_zero() and self.cochain.degree != degree:
            raise ComputationError(f"上链部分次数 {self.cochain.degree} 与 n={degree} 不符")
        if not self.chain.is_zero() and self.chain.degree != degree - algebra.k + 1:
            raise ComputationError(f"链部分次数 {self.chain.degree} 与 n-k+1={degree - algebra.k + 1} 不符")

    @classmethod
    def of_chain(cls, chain: ChainElement) -> 'TateElement':
        A = chain.algebra
        return cls(A, chain.degree + A.k - 1, chain=chain)

    @classmethod
    def of_cochain(cls, f: Union[LeveledCochain, CochainFamily]) -> 'TateElement':
        family = f if isinstance(f, CochainFamily) else CochainFamily(f.coeffs, f.p, f.degree, {f.m: f})
        return cls(family.coeffs.source, family.degree, cochain=family)

    @classmethod
    def from_keys(cls, A: FrobeniusAlgebra, degree: int, keys: Dict[TateKey, Fraction]) -> 'TateElement':
        co = identity_coefficients(A)
        cochain_keys_ = {(key[1], key[2]): c for key, c in keys.items() if key[0] == 'c'}
        chain_terms = {key[1]: c for key, c in keys.items() if key[0] == 'h'}
        return cls(A, degree, CochainFamily.from_keys(co, 0, degree, cochain_keys_), ChainElement(A, chain_terms))

    def keys(self) -> Dict[TateKey, Fraction]:
        out: Dict[TateKey, Fraction] = {('c',) + key: c for key, c in self.cochain.keys().items()}
        out.update({('h', w): c for w, c in self.chain.terms.items()})
        return out

    def is_zero(self) -> bool:
        return self.cochain.is_zero() and self.chain.is_zero()

    def __add__(self, other: 'TateElement') -> 'TateElement':
        if other.algebra is not self.algebra or other.degree != self.degree:
            raise ComputationError("次数或代数不同的 D^* 元素不能相加")
        return TateElement(self.algebra, self.degree, self.cochain + other.cochain, self.chain + other.chain)

    def __neg__(self) -> 'TateElement':
        return self * -1

    def __sub__(self, other: 'TateElement') -> 'TateElement':
        return self + (-other)

    def __mul__(self, scalar) -> 'TateElement':
        return TateElement(self.algebra, self.degree, self.cochain * scalar, self.chain * scalar)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, TateElement):
            return NotImplemented
        return self.algebra is other.algebra and self.keys() == other.keys()

    __hash__ = None

    def __repr__(self) -> str:
        parts = []
        if not self.cochain.is_zero():
            parts.append(repr(self.cochain))
        if not self.chain.is_zero():
            parts.append(f"chain[{self.chain!r}]")
        return f"TateElement(n={self.degree}; " + ("; ".join(parts) or "0") + ")"


def _gamma_cochain(A: FrobeniusAlgebra, chain: ChainElement, degree: int) -> CochainFamily:
    """-γ(α 在 p=0 的部分)，作为 (0, 0) 上链"""
    co = identity_coefficients(A)
    tail: Vector = {}
    for w, c in chain.terms.items():
        if not w.bars:
            combo_add(tail, gamma(A, w.tail), -c)
    value = {Word((), t): c for t, c in clean(tail).items()}
    f = LeveledCochain(co, 0, 0, degree, {(): value} if value else {}, check=False)
    return CochainFamily(co, 0, degree, {0: f})


def tate_differential(t: TateElement) -> TateElement:
    """d(f, α) = (δf - γ(α_0), (-1)^{1-k} ∂α)"""
    A = t.algebra
    n = t.degree + 1
    cochain = family_differential(t.cochain) + _gamma_cochain(A, t.chain, n)
    chain = chain_boundary(t.chain) * sign(1 - A.k)
    return TateElement(A, n, cochain, chain)


@lru_cache(maxsize=None)
def tate_complex(A: FrobeniusAlgebra, p_cap: Optional[int] = None) -> GradedComplex:
    """D^*(A, A) 的 GradedComplex；键为 ('c', 输入, 输出词) 或 ('h', 词)"""
    require_finite(A, p_cap)
    co = identity_coefficients(A)
    k = A.k
    shift = sign(1 - k)

    def basis(n: int) -> List[TateKey]:
        out: List[TateKey] = [('c', inputs, w) for inputs, w in cochain_keys(co, n, 0, p_cap)]
        out.extend(('h', w) for w in chain_words(A, n - k + 1, p_cap))
        return out

    def differential(key: TateKey) -> Dict[TateKey, Fraction]:
        if key[0] == 'c':
            f = LeveledCochain.elementary(co, key[1], key[2])
            return {('c',) + x: c for x, c in omega_cochain_differential(f).keys().items()}
        w = key[1]
        out: Dict[TateKey, Fraction] = {}
        for x, c in _boundary_word(A, w).items():
            if p_cap is None or x.p <= p_cap:
                out[('h', x)] = shift * c
        if not w.bars:
            for t, c in gamma(A, w.tail).items():
                out[('c', (), Word((), t))] = -c
        return out

    return GradedComplex(f"{A.name}:D*", basis, differential,
                         to_element=lambda n, combo: TateElement.from_keys(A, n, combo),
                         from_element=lambda t: t.keys())


def tate_homology(A: FrobeniusAlgebra, window: Window) -> HomologyReport:
    return _homology_report(f"H(D*({A.name}))", tate_complex(A, window.p_cap), window, is_approximate(A, window))


# ---------- 稳定上链 ----------

class StableCochain:
    """
    C_sg 中的元素：层数 P 上的上链族

    θ 保持 m - p；相等与加法都先把两边抬升到同一层。
    """

    __slots__ = ('family',)

    def __init__(self, family: CochainFamily):
        self.family = family

    @classmethod
    def of(cls, f: LeveledCochain) -> 'StableCochain':
        return cls(CochainFamily(f.coeffs, f.p, f.degree, {f.m: f}))

    @classmethod
    def zero(cls, coeffs, level: int, degree: int) -> 'StableCochain':
        return cls(CochainFamily(coeffs, level, degree))

    @property
    def level(self) -> int:
        return self.family.p

    @property
    def degree(self) -> int:
        return self.family.degree

    @property
    def coeffs(self):
        return self.family.coeffs

    def raised(self, times: int) -> 'StableCochain':
        if times < 0:
            raise ValueError("θ 只能向上抬升")
        return StableCochain(theta_family(self.family, times)) if times else self

    def at_level(self, level: int) -> CochainFamily:
        return self.raised(level - self.level).family

    def is_zero(self) -> bool:
        return self.family.is_zero()

    def _common(self, other: 'StableCochain') -> Tuple[CochainFamily, CochainFamily]:
        level = max(self.level, other.level)
        return self.at_level(level), other.at_level(level)

    def __add__(self, other: 'StableCochain') -> 'StableCochain':
        a, b = self._common(other)
        return StableCochain(a + b)

    def __neg__(self) -> 'StableCochain':
        return StableCochain(self.family * -1)

    def __sub__(self, other: 'StableCochain') -> 'StableCochain':
        return self + (-other)

    def __mul__(self, scalar) -> 'StableCochain':
        return StableCochain(self.family * scalar)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, StableCochain):
            return NotImplemented
        a, b = self._common(other)
        return a == b

    __hash__ = None

    def __repr__(self) -> str:
        return f"StableCochain(P={self.level}, {self.family!r})"


def stable_differential(s: StableCochain) -> StableCochain:
    return StableCochain(family_differential(s.family))


def stable_cup(s1: StableCochain, s2: StableCochain) -> StableCochain:
    return StableCochain(family_cup(s1.family, s2.family))


def stable_bracket(s1: StableCochain, s2: StableCochain) -> StableCochain:
    return StableCochain(family_bracket(s1.family, s2.family))


# ---------- ι ----------

def _iota_sign(A: FrobeniusAlgebra, f: int, alpha_degree: int) -> int:
    return sign(A.degree(f) * alpha_degree)


def iota_chain(alpha: ChainElement) -> Dict[int, LeveledCochain]:
    """
    ι(α)(1) = Σ (-1)^{|f_i||α|} ē_i ⊗ ā_1..ā_p ⊗ a_{p+1} f_i

    Returns:
        层数 p+1 -> (0, p+1) 常值上链
    """
    A = alpha.algebra
    co = identity_coefficients(A)
    by_level: Dict[int, Combo] = {}
    for w, c in alpha.terms.items():
        dw = word_degree(A, w)
        target = by_level.setdefault(w.p + 1, {})
        for e, f, ce in A.casimir.terms:
            inner = {Word(w.bars, t): x for t, x in A.mul(w.tail, f).items()}
            combo_add(target, prepend_bar(A, _unit(e), inner), c * ce * _iota_sign(A, f, dw))
    degree = alpha.degree + A.k - 1 if not alpha.is_zero() else 0
    return {level: LeveledCochain(co, 0, level, degree, {(): value}, check=False)
            for level, value in by_level.items() if clean(value)}


def iota(t: TateElement) -> StableCochain:
    """ι(f, α) = f + ι(α)，各分量抬升到共同层数"""
    A = t.algebra
    co = identity_coefficients(A)
    pieces = [StableCochain(t.cochain)] if not t.cochain.is_zero() else []
    pieces.extend(StableCochain.of(f) for f in iota_chain(t.chain).values())
    if not pieces:
        return StableCochain.zero(co, 0, t.degree)
    total = pieces[0]
    for piece in pieces[1:]:
        total = total + piece
    return total


# ---------- π、Π、h、H ----------

def _casimir_by_f(A: FrobeniusAlgebra) -> Dict[int, List[Tuple[int, Fraction]]]:
    out: Dict[int, List[Tuple[int, Fraction]]] = {}
    for e, f, c in A.casimir.terms:
        out.setdefault(f, []).append((e, c))
    return out


def pi_level(F: LeveledCochain) -> Union[LeveledCochain, ChainElement]:
    """
    π_{m,p}: (m, p) -> (m-1, p-1)

    π(F)(ā_1..) = Σ (-1)^{(|f_i|-1)(|F|+k)} e_i ▶ (ε⊗id)(F(f̄_i, ā_1..))；
    m = 0 时 π_{0,p}(F) = (-1)^k (ε⊗id)(F())，结果是链；p = 0 时为恒等。
    """
    if F.p == 0:
        return F
    A = F.target
    k = A.k
    if F.m == 0:
        return ChainElement(A, {w: c * sign(k) for w, c in counit_first(A, F.value(())).items()})
    by_f = _casimir_by_f(A)
    table: Dict[Tuple[int, ...], Combo] = {}
    for x, val in F.table.items():
        f, y = x[0], x[1:]
        if f not in by_f:
            continue
        reduced = counit_first(A, val)
        if not reduced:
            continue
        s = sign((A.degree(f) - 1) * (F.degree + k))
        for e, c in by_f[f]:
            combo_add(table.setdefault(y, {}), act_left(A, _unit(e), reduced), s * c)
    return LeveledCochain(F.coeffs, F.m - 1, F.p - 1, F.degree, table, check=False)


def h_level(F: LeveledCochain) -> LeveledCochain:
    """
    h_{m,p}: (m, p) -> (m-1, p)，次数减一

    h(F)(ā_1..) = Σ (-1)^{(|f_i|-1)(|F|+k)} ē_i ⊗ (ε⊗id)(F(f̄_i, ā_1..))；m 或 p 为零时为零。
    """
    A = F.target
    out_m = max(F.m - 1, 0)
    if F.m == 0 or F.p == 0:
        return LeveledCochain(F.coeffs, out_m, F.p, F.degree - 1)
    by_f = _casimir_by_f(A)
    table: Dict[Tuple[int, ...], Combo] = {}
    for x, val in F.table.items():
        f, y = x[0], x[1:]
        if f not in by_f:
            continue
        reduced = counit_first(A, val)
        if not reduced:
            continue
        s = sign((A.degree(f) - 1) * (F.degree + A.k))
        for e, c in by_f[f]:
            combo_add(table.setdefault(y, {}), prepend_bar(A, _unit(e), reduced), s * c)
    return LeveledCochain(F.coeffs, out_m, F.p, F.degree - 1, table, check=False)


def Pi(s: StableCochain) -> TateElement:
    """
    Π: 每个分量 (m, P) 迭代 π：m >= P 时落到 p=0 的上链，否则先到 (0, P-m) 再取 π_{0}
    """
    co = s.coeffs
    A = co.source
    n = s.degree
    cochain = CochainFamily(co, 0, n)
    chain = ChainElement.zero(A)
    for m, F in s.family.items():
        G = F
        steps = min(m, s.level)
        for _ in range(steps):
            G = pi_level(G)
        if G.p == 0:
            cochain = cochain + CochainFamily(co, 0, n, {G.m: G})
        else:
            chain = chain + pi_level(G)
    return TateElement(A, n, cochain, chain)


def H(s: StableCochain) -> StableCochain:
    """H = Σ_{i=0}^{min(p,m)-1} θ^i h π^i，逐分量；次数减一"""
    co = s.coeffs
    P = s.level
    out = CochainFamily(co, P, s.degree - 1)
    for m, F in s.family.items():
        if m == 0 or P == 0:
            continue
        G = F
        for i in range(min(P, m)):
            piece = theta_power(h_level(G), i)
            out = out + CochainFamily(co, P, s.degree - 1, {piece.m: piece})
            G = pi_level(G)
    return StableCochain(out)


# ---------- 收缩检查 ----------

def _tate_basis_elements(A: FrobeniusAlgebra, window: Window):
    cx = tate_complex(A, window.p_cap)
    for n in window.degrees():
        for key in cx.basis(n):
            yield n, key, TateElement.from_keys(A, n, {key: ONE})


def _random_stable(A: FrobeniusAlgebra, rng: random.Random, window: Window, max_m: int = 4,
                   max_p: int = 4, attempts: int = 20) -> Optional[StableCochain]:
    co = identity_coefficients(A)
    for _ in range(attempts):
        P = rng.randint(0, max_p)
        n = rng.choice(list(window.degrees()))
        keys = [key for key in cochain_keys(co, n, P, window.p_cap) if len(key[0]) <= max_m]
        if not keys:
            continue
        chosen = rng.sample(keys, min(len(keys), rng.randint(1, 3)))
        coeffs = {key: Fraction(rng.choice([-3, -2, -1, 1, 2, 3])) for key in chosen}
        return StableCochain(CochainFamily.from_keys(co, P, n, coeffs))
    return None


def retract_check(A: FrobeniusAlgebra, window: Window, samples: int = 50, seed: int = 0,
                  strict: bool = False) -> CheckLedger:
    """
    Π∘ι = id 与 ι 的链映射性质（窗口内全部 D 基元素），以及
    id - ι∘Π = δH + Hδ（samples 个随机稳定上链，m, p <= 4）
    """
    if not A.is_simply_connected:
        raise NotSimplyConnected(f"{A.name} 不是单连通的", algebra=A.name)
    ledger = CheckLedger('retract')
    for n, key, t in _tate_basis_elements(A, window):
        ledger.tick(2)
        s = iota(t)
        back = Pi(s)
        if back != t:
            ledger.fail('pi-iota-identity', f"n={n}, {key!r}", repr(back - t))
        if stable_differential(s) != iota(tate_differential(t)):
            ledger.fail('iota-chain-map', f"n={n}, {key!r}")

    rng = random.Random(seed)
    drawn = 0
    for index in range(samples):
        s = _random_stable(A, rng, window)
        if s is None:
            continue
        drawn += 1
        ledger.tick()
        lhs = s - iota(Pi(s))
        rhs = stable_differential(H(s)) + H(stable_differential(s))
        if lhs != rhs:
            ledger.fail('retract-homotopy', f"sample {index}: {s!r}", repr(lhs - rhs))
    ledger.notes['samples'] = drawn
    logger.info(f"[收缩] {A.name}: 检查 {ledger.checked} 项, 失败 {len(ledger.failures)} 项")
    if strict:
        ledger.raise_if_failed()
    return ledger


def iota_cup_check(A: FrobeniusAlgebra, window: Window, samples: int = 50, seed: int = 0,
                   strict: bool = False) -> CheckLedger:
    """随机齐次链对上 ι(α)∪ι(β) = ι(α⋆β)（精确的链层面等式）"""
    ledger = CheckLedger('iota-cup')
    rng = random.Random(seed)
    pools: Dict[Tuple[int, int], List[Word]] = {}
    for n in window.degrees():
        for w in chain_words(A, n, window.p_cap):
            pools.setdefault((n, w.p), []).append(w)
    slots = sorted(pools)
    if not slots:
        return ledger

    def draw() -> ChainElement:
        words = pools[rng.choice(slots)]
        chosen = rng.sample(words, min(len(words), rng.randint(1, 2)))
        return ChainElement(A, {w: Fraction(rng.choice([-2, -1, 1, 2])) for w in chosen})

    for index in range(samples):
        alpha, beta = draw(), draw()
        ledger.tick()
        lhs = stable_cup(iota(TateElement.of_chain(alpha)), iota(TateElement.of_chain(beta)))
        product = star(alpha, beta)
        if product.is_zero():
            ok = lhs.is_zero()
        else:
            ok = lhs == iota(TateElement.of_chain(product))
        if not ok:
            ledger.fail('iota-cup-star', f"sample {index}: α={alpha!r}, β={beta!r}")
    if strict:
        ledger.raise_if_failed()
    return ledger


# ---------- HH_sg ----------

@dataclass
class SgHomologyReport:
    """
    HH_sg 的窗口报告

    case_dims 是由 HH^*、HH_* 和 χ 按维数公式推出的值，与 dims（D 的同调）独立计算。
    χ = 0 时 HH_sg^{k-1}、HH_sg^k 的直和分解取主元决定的代表元，这是一个选择。
    """
    algebra: FrobeniusAlgebra
    window: Window
    homology: HomologyReport
    case_dims: Dict[int, int] = field(default_factory=dict)
    cohomology_dims: Dict[int, int] = field(default_factory=dict)
    chain_dims: Dict[int, int] = field(default_factory=dict)
    les: Optional[CheckLedger] = None
    approximate: bool = False

    def dims(self) -> Dict[int, int]:
        return self.homology.dims()

    def dim(self, n: int) -> int:
        return self.homology.dim(n)

    def classes(self, n: int) -> List[TateElement]:
        return self.homology.representatives(n)

    def element(self, n: int, coords: Sequence) -> TateElement:
        out = TateElement(self.algebra, n)
        for rep, c in zip(self.classes(n), coords):
            if c:
                out = out + rep * c
        return out

    def reduce(self, n: int, t: TateElement) -> Tuple[Fraction, ...]:
        if n not in self.window:
            raise WindowOverflow(f"次数 {n} 不在窗口 [{self.window.n_min}, {self.window.n_max}] 内", degree=n)
        return self.homology.reduce(n, t)

    @property
    def case_split_ok(self) -> bool:
        return all(self.case_dims.get(n) == d for n, d in self.dims().items())


def case_split_dims(A: FrobeniusAlgebra, window: Window, cohomology: Dict[int, int],
                    chains: Dict[int, int]) -> Dict[int, int]:
    """
    由长正合列推出的维数：
        i < k-1: HH^i；i = k-1: HH^{k-1} + HH_0 - r；i = k: HH^k - r + HH_1；i > k: HH_{i-k+1}
    其中 r = 1（χ ≠ 0）或 0（χ = 0）
    """
    k = A.k
    r = 0 if euler_char(A).is_zero else 1
    out = {}
    for i in window.degrees():
        if i < k - 1:
            out[i] = cohomology[i]
        elif i == k - 1:
            out[i] = cohomology[i] + chains[0] - r
        elif i == k:
            out[i] = cohomology[i] - r + chains[1]
        else:
            out[i] = chains[i - k + 1]
    return out


def _sg_inputs(A: FrobeniusAlgebra, window: Window) -> Tuple[HomologyReport, HomologyReport]:
    k = A.k
    coh = hh_cohomology(A, Window(window.n_min, window.n_max + 1, window.p_cap))
    low = min(window.n_min - k, 0)
    high = max(window.n_max - k + 1, 1)
    chains = hh_homology(A, Window(low, high, window.p_cap))
    return coh, chains


def hh_sg(A: FrobeniusAlgebra, window: Window, check_exactness: bool = True) -> SgHomologyReport:
    """
    窗口内的 HH_sg，作为 D^* 的同调

    Raises:
        NotSimplyConnected: A^1 ≠ 0
        ExactnessFailure: 长正合列在某个节点不正合
    """
    if not A.is_simply_connected:
        raise NotSimplyConnected(f"{A.name} 不是单连通的", algebra=A.name)
    homology = tate_homology(A, window)
    coh, chains = _sg_inputs(A, window)
    report = SgHomologyReport(A, window, homology,
                              cohomology_dims=coh.dims(), chain_dims=chains.dims(),
                              approximate=homology.approximate)
    report.case_dims = case_split_dims(A, window, report.cohomology_dims, report.chain_dims)
    if not report.case_split_ok:
        logger.warning(f"[HH_sg] {A.name}: D 的同调维数与维数公式不一致 "
                       f"{report.dims()} vs {report.case_dims}")
    if check_exactness:
        report.les = les_check(A, window, report)
        if not report.les.passed:
            first = report.les.failures[0]
            raise ExactnessFailure(first.witness, residual=first.residual)
    return report


# ---------- 长正合列 ----------

def _map_matrix(columns: List[Tuple[Fraction, ...]], rows: int) -> SparseMatrix:
    vectors = [{i: c for i, c in enumerate(col) if c} for col in columns]
    return SparseMatrix.from_columns(rows, vectors)


def les_check(A: FrobeniusAlgebra, window: Window, report: Optional[SgHomologyReport] = None,
              strict: bool = False) -> CheckLedger:
    """
    … → HH_{i-k} -(-γ)-> HH^i -> HH_sg^i -> HH_{i-k+1} -(-γ)-> HH^{i+1} → …

    在每个节点上比较像与核（作为子空间），并单独记录短正合段
    0 → HH^{k-1} → HH_sg^{k-1} → A^0 → A^k → HH_sg^k → HH_1 → 0 的各项维数。
    """
    k = A.k
    co = identity_coefficients(A)
    tate = report.homology if report is not None else tate_homology(A, window)
    coh, chains = _sg_inputs(A, window)
    cochains = leveled_complex(co, 0, window.p_cap)
    ledger = CheckLedger('long-exact-sequence')

    def gamma_map(i: int) -> SparseMatrix:
        """HH_{i-k} -> HH^i"""
        columns = []
        for alpha in chains.representatives(i - k):
            f = _gamma_cochain(A, alpha, i)
            columns.append(coh.reduce_vector(i, cochains.to_vector(i, f.keys())))
        return _map_matrix(columns, coh.dim(i))

    def inclusion(i: int) -> SparseMatrix:
        """HH^i -> HH_sg^i"""
        columns = [tate.reduce(i, TateElement.of_cochain(f)) for f in coh.representatives(i)]
        return _map_matrix(columns, tate.dim(i))

    def projection(i: int) -> SparseMatrix:
        """HH_sg^i -> HH_{i-k+1}"""
        columns = [chains.reduce(i - k + 1, t.chain) for t in tate.representatives(i)]
        return _map_matrix(columns, chains.dim(i - k + 1))

    def compare(node: str, incoming: SparseMatrix, outgoing: SparseMatrix) -> None:
        ledger.tick()
        im = image(incoming)
        _, ker = rank_kernel(outgoing)
        ledger.notes[node] = f"rank_in={incoming.rank()}, rank_out={outgoing.rank()}"
        if im != ker:
            ledger.fail(node, node, f"image {im.dim} 维, kernel {ker.dim} 维")

    for i in window.degrees():
        g_i, inc, proj, g_next = gamma_map(i), inclusion(i), projection(i), gamma_map(i + 1)
        compare(f"HH^{i}", g_i, inc)
        compare(f"HH_sg^{i}", inc, proj)
        compare(f"HH_{i - k + 1}", proj, g_next)

    if k - 1 in window and k in window:
        ledger.notes['short_form'] = {
            f"HH^{k - 1}": coh.dim(k - 1), f"HH_sg^{k - 1}": tate.dim(k - 1),
            'A^0 -> A^k rank': gamma_map(k).rank(), f"HH_sg^{k}": tate.dim(k), 'HH_1': chains.dim(1),
        }
    logger.info(f"[长正合列] {A.name}: 检查 {ledger.checked} 个节点, 失败 {len(ledger.failures)} 个")
    if strict and ledger.failures:
        first = ledger.failures[0]
        raise ExactnessFailure(first.identity, residual=first.residual)
    return ledger


# ---------- HH_sg 上的乘积与括号 ----------

def tate_cup(t1: TateElement, t2: TateElement) -> TateElement:
    """Π(ι(t1) ∪ ι(t2))"""
    return Pi(stable_cup(iota(t1), iota(t2)))


def tate_bracket(t1: TateElement, t2: TateElement) -> TateElement:
    return Pi(stable_bracket(iota(t1), iota(t2)))


def _product_degree(report: SgHomologyReport, n: int) -> None:
    if n not in report.window:
        raise WindowOverflow(f"乘积次数 {n} 超出窗口 [{report.window.n_min}, {report.window.n_max}]",
                             degree=n)


def cup_on_hhsg(report: SgHomologyReport, n1: int, c1: Sequence, n2: int, c2: Sequence) -> Tuple[Fraction, ...]:
    """
    两个 HH_sg 类的 cup 积，用代表元经 ι 相乘再经 Π 拉回

    Raises:
        WindowOverflow: n1 + n2 不在窗口内
    """
    n = n1 + n2
    _product_degree(report, n)
    product = tate_cup(report.element(n1, c1), report.element(n2, c2))
    if product.is_zero():
        return tuple(Fraction(0) for _ in range(report.dim(n)))
    return report.reduce(n, product)


def cup_table(report: SgHomologyReport) -> Dict[Tuple[Tuple[int, int], Tuple[int, int]], Tuple[int, Tuple[Fraction, ...]]]:
    """窗口内全部基类对的 cup 积（乘积次数越出窗口的不记录）"""
    table = {}
    basis = [(n, i) for n in report.window.degrees() for i in range(report.dim(n))]
    for left in basis:
        for right in basis:
            n = left[0] + right[0]
            if n not in report.window:
                continue
            e1 = tuple(Fraction(int(j == left[1])) for j in range(report.dim(left[0])))
            e2 = tuple(Fraction(int(j == right[1])) for j in range(report.dim(right[0])))
            table[(left, right)] = (n, cup_on_hhsg(report, left[0], e1, right[0], e2))
    return table


def bracket_on_hhsg(report: SgHomologyReport, n1: int, c1: Sequence, n2: int, c2: Sequence) -> Tuple[Fraction, ...]:
    """括号 {c1, c2}，次数 n1 + n2 - 1"""
    n = n1 + n2 - 1
    _product_degree(report, n)
    product = tate_bracket(report.element(n1, c1), report.element(n2, c2))
    if product.is_zero():
        return tuple(Fraction(0) for _ in range(report.dim(n)))
    return report.reduce(n, product)


def jacobi_probe(report: SgHomologyReport, classes: Sequence[Tuple[int, Sequence]]) -> CheckLedger:
    """
    在给定类上检查括号的反对称性；三元组上的 Jacobi 残差记入 notes（只报告，不判失败）
    """
    ledger = CheckLedger('jacobi-probe')
    for a, (na, ca) in enumerate(classes):
        for b, (nb, cb) in enumerate(classes):
            if na + nb - 1 not in report.window:
                continue
            ledger.tick()
            lhs = bracket_on_hhsg(report, na, ca, nb, cb)
            rhs = bracket_on_hhsg(report, nb, cb, na, ca)
            s = -sign((na - 1) * (nb - 1))
            if tuple(lhs) != tuple(s * c for c in rhs):
                ledger.fail('antisymmetry', f"({na}:{a}, {nb}:{b})", f"{lhs} vs {rhs}")
    residuals = {}
    for a, (na, ca) in enumerate(classes):
        for b, (nb, cb) in enumerate(classes):
            for c, (nc, cc) in enumerate(classes):
                n = na + nb + nc - 2
                if n not in report.window or na + nb - 1 not in report.window or nb + nc - 1 not in report.window \
                        or nc + na - 1 not in report.window:
                    continue
                ta, tb, tc = report.element(na, ca), report.element(nb, cb), report.element(nc, cc)
                total = TateElement(report.algebra, n)
                for x, y, z, nx, nz in ((ta, tb, tc, na, nc), (tb, tc, ta, nb, na), (tc, ta, tb, nc, nb)):
                    total = total + tate_bracket(x, tate_bracket(y, z)) * sign((nx - 1) * (nz - 1))
                ledger.tick()
                try:
                    residuals[(a, b, c)] = report.reduce(n, total)
                except ComputationError as e:
                    residuals[(a, b, c)] = f"not a cocycle: {e.message}"
    ledger.notes['residuals'] = residuals
    return ledger


def gh_table(A: FrobeniusAlgebra, window: Window, full: bool = False, cross_check: bool = True) -> StarTable:
    """
    约化 HH 类上的 ⋆ 乘法表；cross_check 时与对应 HH_sg 类的 cup 积逐项比较

    Args:
        full: χ(A) = 0 时改用完整链复形
    """
    if not A.is_simply_connected:
        raise NotSimplyConnected(f"{A.name} 不是单连通的", algebra=A.name)
    if full and not euler_char(A).is_zero:
        raise ComputationError(f"χ({A.name}) ≠ 0，⋆ 在完整复形上不是链映射")
    table, chains = build_star_table(A, window, full=full)
    if not cross_check:
        return table
    shift = A.k - 1
    sg_window = Window(window.n_min + shift, window.n_max + shift, window.p_cap)
    tate = tate_homology(A, sg_window)
    ledger = CheckLedger('gh-cup-agreement')
    reps = {(n, i): rep for n in window.degrees() for i, rep in enumerate(chains.representatives(n))}
    for (left, right), (n, _) in sorted(table.entries.items()):
        x, y = reps[left], reps[right]
        sg_degree = n + shift
        if sg_degree not in sg_window:
            continue
        ledger.tick()
        via_cup = tate_cup(TateElement.of_chain(x), TateElement.of_chain(y))
        product = star(x, y)
        direct = TateElement.of_chain(product) if not product.is_zero() else TateElement(A, sg_degree)
        lhs = tate.reduce(sg_degree, via_cup) if not via_cup.is_zero() else None
        rhs = tate.reduce(sg_degree, direct) if not direct.is_zero() else None
        zero = tuple(Fraction(0) for _ in range(tate.dim(sg_degree)))
        if (lhs or zero) != (rhs or zero):
            ledger.fail('gh-cup-agreement', f"{left} · {right}", f"{lhs} vs {rhs}")
    table.ledger = ledger
    return table
