"""
链层面的乘积与括号

⋆ 乘积（Goresky–Hingston）、Leibniz 偏差、θ、de Rham 上闭链、cup / cup′、κ 拼接、
•_i 运算、括号，以及 cup 与 cup′ 之间的同伦。

上链一律是 LeveledCochain；cup、•、括号按定义逐点求值（对输入词做拉取式枚举），
输入次数的上界由输出层的最大次数决定，因此每个结果都是有限表。
"""
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as cartesian
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from .errors import CheckLedger, IndexOutOfRange, PreconditionError
from .frobenius_algebra import FrobeniusAlgebra
from .graded_signs import epsilon_prefix, sign
from .hochschild_complexes import (ONE, ChainElement, CochainKey, Coefficients, Combo, CochainFamily, HomologyReport,
                                   LeveledCochain, Window, Word, _unit, bar_words, bars_degree,
                                   chain_boundary, cochain_keys, combo_add, family_differential, hh_homology,
                                   identity_coefficients, kappa_words, max_level_degree,
                                   omega_cochain_differential, prepend_bar, word_degree,
                                   words_from_slots, _window_words)
from .logger import get_logger
from .rational_linalg import SparseMatrix, Vector, add_into, clean

logger = get_logger()


# ---------- ⋆ 乘积 ----------

def _star_sign(A: FrobeniusAlgebra, du: int, dv: int, f: int, v_tail: int) -> int:
    k = A.k
    return sign(du * A.degree(f) + A.degree(v_tail) + (du + k - 1) * (dv + k - 1))


def star_words(A: FrobeniusAlgebra, u: Word, v: Word) -> Combo:
    """
    (ā_1..ā_p⊗a) ⋆ (b̄_1..b̄_q⊗b) = Σ_i (-1)^{η_i} b̄_1..b̄_q ⊗ \\overline{b e_i} ⊗ ā_1..ā_p ⊗ a f_i
    """
    du, dv = word_degree(A, u), word_degree(A, v)
    out: Combo = {}
    for e, f, c in A.casimir.terms:
        slots = [_unit(b) for b in v.bars] + [A.mul(v.tail, e)] + [_unit(b) for b in u.bars]
        combo_add(out, words_from_slots(A, slots, A.mul(u.tail, f), c * _star_sign(A, du, dv, f, v.tail)))
    return out


def _bilinear(fn: Callable[[Word, Word], Combo], x: ChainElement, y: ChainElement) -> ChainElement:
    out: Combo = {}
    for u, cu in x.terms.items():
        for v, cv in y.terms.items():
            combo_add(out, fn(u, v), cu * cv)
    return ChainElement(x.algebra, out)


def star(alpha: ChainElement, beta: ChainElement) -> ChainElement:
    """⋆ 乘积，次数 |α|+|β|+k-1"""
    A = alpha.algebra
    return _bilinear(lambda u, v: star_words(A, u, v), alpha, beta)


def leibniz_anomaly(alpha: ChainElement, beta: ChainElement) -> ChainElement:
    """∂(α⋆β) - ∂α⋆β - (-1)^{|α|+k-1} α⋆∂β，直接计算"""
    A = alpha.algebra
    if alpha.is_zero() or beta.is_zero():
        return ChainElement.zero(A)
    s = sign(alpha.degree + A.k - 1)
    return chain_boundary(star(alpha, beta)) - star(chain_boundary(alpha), beta) - s * star(alpha, chain_boundary(beta))


def gamma_vector(A: FrobeniusAlgebra, a: Vector) -> Vector:
    """γ(a) = Σ (-1)^{|f_i||a|} e_i a f_i"""
    out: Vector = {}
    for x, cx in a.items():
        for e, f, c in A.casimir.terms:
            add_into(out, A.mul_vec(A.mul(e, x), _unit(f)), c * cx * sign(A.degree(f) * A.degree(x)))
    return out


def _closed_form_words(A: FrobeniusAlgebra, u: Word, v: Word) -> Combo:
    du, dv = word_degree(A, u), word_degree(A, v)
    out: Combo = {}
    if not u.bars:
        for e, f, c in A.casimir.terms:
            s = _star_sign(A, du, dv, f, v.tail) * sign(dv - 1 - A.degree(v.tail))
            tail = A.mul_vec(A.mul_vec(A.mul(v.tail, e), _unit(u.tail)), _unit(f))
            combo_add(out, words_from_slots(A, [_unit(b) for b in v.bars], tail, c * s))
    if not v.bars:
        tail = A.mul_vec(_unit(u.tail), gamma_vector(A, _unit(v.tail)))
        combo_add(out, words_from_slots(A, [_unit(b) for b in u.bars], tail, -sign(du)))
    return out


def leibniz_closed_form(alpha: ChainElement, beta: ChainElement) -> ChainElement:
    """
    Leibniz 偏差的闭式

    p = 0 时为 Σ (-1)^{η_i+|β|-1-|b_{q+1}|} b̄_1..b̄_q ⊗ b_{q+1} e_i a f_i，
    q = 0 时为 -(-1)^{|α|} ā_1..ā_p ⊗ a_{p+1} γ(b)，两者都为零时取和，p、q 都为正时为零。
    """
    A = alpha.algebra
    return _bilinear(lambda u, v: _closed_form_words(A, u, v), alpha, beta)


def anomaly_check(A: FrobeniusAlgebra, window: Window, strict: bool = False) -> CheckLedger:
    """窗口内所有基词对上，直接计算的偏差等于闭式"""
    ledger = CheckLedger('leibniz-anomaly')
    words = _window_words(A, window)
    for u, v in cartesian(words, repeat=2):
        alpha, beta = ChainElement(A, {u: ONE}), ChainElement(A, {v: ONE})
        direct = leibniz_anomaly(alpha, beta)
        closed = leibniz_closed_form(alpha, beta)
        ledger.tick()
        if direct != closed:
            ledger.fail('anomaly-closed-form', f"α={alpha!r}, β={beta!r}", repr(direct - closed))
        if u.bars and v.bars and not direct.is_zero():
            ledger.fail('anomaly-vanishes', f"α={alpha!r}, β={beta!r}", repr(direct))
    ledger.notes['pairs'] = len(words) ** 2
    logger.info(f"[⋆ 偏差] {A.name}: 检查 {ledger.checked} 对, 失败 {len(ledger.failures)} 项")
    if strict:
        ledger.raise_if_failed()
    return ledger


def star_associativity_check(A: FrobeniusAlgebra, window: Window, max_total: Optional[int] = None,
                             strict: bool = False) -> CheckLedger:
    """约化复形上 (α⋆β)⋆γ = α⋆(β⋆γ)，遍历窗口内全次数不超过 max_total 的基词三元组"""
    ledger = CheckLedger('star-associativity')
    words = [w for w in _window_words(A, window) if not (w.p == 0 and w.tail == A.unit)]
    degree = {w: word_degree(A, w) for w in words}
    for u, v, w in cartesian(words, repeat=3):
        if max_total is not None and degree[u] + degree[v] + degree[w] > max_total:
            continue
        x, y, z = (ChainElement(A, {t: ONE}) for t in (u, v, w))
        ledger.tick()
        lhs, rhs = star(star(x, y), z), star(x, star(y, z))
        if lhs != rhs:
            ledger.fail('star-associative', f"({x!r}, {y!r}, {z!r})", repr(lhs - rhs))
    if strict:
        ledger.raise_if_failed()
    return ledger


# ---------- θ 与 de Rham 上闭链 ----------

def theta(f: LeveledCochain) -> LeveledCochain:
    """θ(f)(ā_1, ..) = (-1)^{(|a_1|-1)|f|} \\overline{φ(a_1)} ⊗ f(ā_2, ..)，落在 (m+1, p+1)"""
    co = f.coeffs
    A, B = co.source, co.target
    table: Dict[Tuple[int, ...], Combo] = {}
    for y, val in f.table.items():
        for a in A.bar_indices:
            s = sign((A.degree(a) - 1) * f.degree)
            combo_add(table.setdefault((a,) + y, {}), prepend_bar(B, co.bar_image(a), val), s)
    return LeveledCochain(co, f.m + 1, f.p + 1, f.degree, table, check=False)


def theta_power(f: LeveledCochain, times: int) -> LeveledCochain:
    for _ in range(times):
        f = theta(f)
    return f


def theta_family(x: CochainFamily, times: int = 1) -> CochainFamily:
    return CochainFamily(x.coeffs, x.p + times, x.degree,
                         {m + times: theta_power(f, times) for m, f in x.items()})


def unit_cochain(coeffs) -> LeveledCochain:
    """() ↦ 1，位于 (0, 0)"""
    if isinstance(coeffs, FrobeniusAlgebra):
        coeffs = identity_coefficients(coeffs)
    B = coeffs.target
    return LeveledCochain(coeffs, 0, 0, 0, {(): {Word((), B.unit): ONE}})


def de_rham_cocycle(coeffs) -> LeveledCochain:
    """d_dR: ā ↦ \\overline{φ(a)}⊗1，位于 (1, 1)，次数 0"""
    return theta(unit_cochain(coeffs))


def theta_injectivity_check(A: FrobeniusAlgebra, window: Window, levels: Sequence[int] = (0, 1, 2),
                            strict: bool = False) -> CheckLedger:
    """θ 在每个窗口切片上列满秩"""
    from .hochschild_complexes import leveled_complex
    co = identity_coefficients(A)
    ledger = CheckLedger('theta-injective')
    for p in levels:
        source, target = leveled_complex(co, p, window.p_cap), leveled_complex(co, p + 1, window.p_cap)
        for n in window.degrees():
            keys = source.basis(n)
            columns = [target.to_vector(n, theta(LeveledCochain.elementary(co, x, w)).keys()) for x, w in keys]
            matrix = SparseMatrix.from_columns(len(target.basis(n)), columns)
            ledger.tick()
            if matrix.rank() != len(keys):
                ledger.fail('theta-injective', f"p={p}, n={n}", f"rank {matrix.rank()} < {len(keys)}")
    if strict:
        ledger.raise_if_failed()
    return ledger


# ---------- cup 与 cup′ ----------

def _inputs_upto(A: FrobeniusAlgebra, length: int, max_shift: int) -> Iterator[Tuple[int, ...]]:
    for d in range(0, max_shift + 1):
        yield from bar_words(A, length, d)


def _pull(co: Coefficients, m: int, p: int, degree: int,
          value: Callable[[Tuple[int, ...]], Combo]) -> LeveledCochain:
    """按输入词逐个求值，拼出 (m, p) 上链"""
    table: Dict[Tuple[int, ...], Combo] = {}
    bound = max_level_degree(co.target, p) - degree
    if m >= 0 and bound >= 0:
        for x in _inputs_upto(co.source, m, bound):
            v = clean(value(x))
            if v:
                table[x] = v
    return LeveledCochain(co, max(m, 0), p, degree, table, check=False)


def _same_identity(f: LeveledCochain, g: LeveledCochain) -> Coefficients:
    if f.coeffs is not g.coeffs:
        raise PreconditionError("两个上链的系数不同")
    if not f.coeffs.is_identity:
        raise PreconditionError("乘积只对 C^*(A, Ω^*(A)) 定义，混合系数不能直接相乘")
    return f.coeffs


def cup(f: LeveledCochain, g: LeveledCochain) -> LeveledCochain:
    """
    f ∪ g = (id^{p+q}⊗μ)∘(id^q⊗f⊗id)∘(id^m⊗g)

    g 吃掉最后 n 个输入（符号 (-1)^{|g|ε_m}），f 吃掉 g 的输出 bar 之前的 m 个槽位
    （符号 (-1)^{|f|·(越过的 q 个槽位的次数)}），最后尾部相乘。
    """
    co = _same_identity(f, g)
    A = co.source
    m, q = f.m, g.p

    def value(x: Tuple[int, ...]) -> Combo:
        degs = [A.degree(b) for b in x]
        s_g = sign(g.degree * epsilon_prefix(degs, m))
        out: Combo = {}
        for gw, cg in g.value(x[m:]).items():
            slots = x[:m] + gw.bars
            head = slots[:q]
            s_f = sign(f.degree * bars_degree(A, head))
            for fw, cf in f.value(slots[q:q + m]).items():
                bars = [_unit(b) for b in head + fw.bars]
                combo_add(out, words_from_slots(A, bars, A.mul(fw.tail, gw.tail), s_g * s_f * cg * cf))
        return out

    return _pull(co, f.m + g.m, f.p + g.p, f.degree + g.degree, value)


def kappa_concat(u: ChainElement, v: ChainElement) -> ChainElement:
    """κ(u ⊗_A v) = ū ⊗ (u_tail ▶ v)"""
    return ChainElement(u.algebra, kappa_words(u.algebra, u.terms, v.terms))


def cup_prime(f: LeveledCochain, g: LeveledCochain) -> LeveledCochain:
    """f ∪′ g = (-1)^{ε_m|g|} κ(f(ā_1..ā_m) ⊗_A g(ā_{m+1}..))"""
    co = _same_identity(f, g)
    A = co.source
    m = f.m

    def value(x: Tuple[int, ...]) -> Combo:
        fv = f.value(x[:m])
        if not fv:
            return {}
        gv = g.value(x[m:])
        if not gv:
            return {}
        s = sign(epsilon_prefix([A.degree(b) for b in x], m) * g.degree)
        return {w: s * c for w, c in kappa_words(A, fv, gv).items()}

    return _pull(co, f.m + g.m, f.p + g.p, f.degree + g.degree, value)


def _family_product(op, x: CochainFamily, y: CochainFamily, degree_shift: int = 0) -> CochainFamily:
    out = None
    for _, f in x.items():
        for _, g in y.items():
            h = op(f, g)
            piece = CochainFamily(h.coeffs, h.p, h.degree, {h.m: h})
            out = piece if out is None else out + piece
    if out is None:
        return CochainFamily(x.coeffs, x.p + y.p, x.degree + y.degree + degree_shift)
    return out


def family_cup(x: CochainFamily, y: CochainFamily) -> CochainFamily:
    return _family_product(cup, x, y)


def cup_associativity_check(cochains: Sequence[LeveledCochain], strict: bool = False) -> CheckLedger:
    """在给定上链的全部三元组上检查 (f∪g)∪h = f∪(g∪h)，并检查单位上链两侧的单位律"""
    ledger = CheckLedger('cup-associativity')
    for f in cochains:
        one = unit_cochain(f.coeffs)
        ledger.tick(2)
        if cup(one, f) != f:
            ledger.fail('cup-left-unit', repr(f))
        if cup(f, one) != f:
            ledger.fail('cup-right-unit', repr(f))
    for f, g, h in cartesian(cochains, repeat=3):
        ledger.tick()
        lhs, rhs = cup(cup(f, g), h), cup(f, cup(g, h))
        if lhs != rhs:
            ledger.fail('cup-associative', f"({f!r}, {g!r}, {h!r})", repr(lhs - rhs))
    if strict:
        ledger.raise_if_failed()
    return ledger


# ---------- •_i 与括号 ----------

def _check_index(f: LeveledCochain, i: int) -> None:
    if i == 0 or i < -f.p or i > f.m:
        raise IndexOutOfRange(f"•_i 的下标 {i} 不在 [-{f.p}, {f.m}]\\{{0}} 内", i=i, m=f.m, p=f.p)


def bullet(f: LeveledCochain, g: LeveledCochain, i: int) -> LeveledCochain:
    """
    f •_i g

    i > 0：把 π̃g = (id^q⊗π)∘g 插入 f 的第 i 个输入槽位；
    i < 0：先用 f 吃掉最后 m 个输入，再把 π̃g 插到 f 的输出 bar 中从右数第 |i| 个位置。
    π 把单位元映成零。

    Raises:
        IndexOutOfRange: i 不在 [-p, m] 内或 i = 0
    """
    co = _same_identity(f, g)
    _check_index(f, i)
    A = co.source
    m, p, n, q = f.m, f.p, g.m, g.p
    degree = f.degree + g.degree - 1

    def pi_tilde(gw: Word) -> Tuple[Tuple[int, ...], int]:
        return gw.bars + (gw.tail,), sign(bars_degree(A, gw.bars))

    if i > 0:
        def value(x: Tuple[int, ...]) -> Combo:
            degs = [A.degree(b) for b in x]
            s_ins = sign((g.degree - 1) * epsilon_prefix(degs, i - 1))
            out: Combo = {}
            for gw, cg in g.value(x[i - 1:i - 1 + n]).items():
                if gw.tail == A.unit:
                    continue
                inserted, s_pi = pi_tilde(gw)
                slots = x[:i - 1] + inserted + x[i - 1 + n:]
                head = slots[:q]
                s_f = sign(f.degree * bars_degree(A, head))
                for fw, cf in f.value(slots[q:]).items():
                    key = Word(head + fw.bars, fw.tail)
                    out[key] = out.get(key, 0) + s_ins * s_pi * s_f * cg * cf
            return out
    else:
        j = p + i

        def value(x: Tuple[int, ...]) -> Combo:
            if n == 0:
                return {}
            degs = [A.degree(b) for b in x]
            s_f = sign(f.degree * epsilon_prefix(degs, n - 1))
            out: Combo = {}
            for fw, cf in f.value(x[n - 1:]).items():
                slots = x[:n - 1] + fw.bars
                s_g = sign((g.degree - 1) * bars_degree(A, slots[:j]))
                for gw, cg in g.value(slots[j:j + n]).items():
                    if gw.tail == A.unit:
                        continue
                    inserted, s_pi = pi_tilde(gw)
                    key = Word(slots[:j] + inserted + slots[j + n:], fw.tail)
                    out[key] = out.get(key, 0) + s_f * s_g * s_pi * cf * cg
            return out

    return _pull(co, m + n - 1, p + q, degree, value)


def bullet_below(f: LeveledCochain, g: LeveledCochain) -> LeveledCochain:
    """f •_{<0} g = -Σ_{i=1}^p f •_{-i} g（g 不吃输入时为零）"""
    co = _same_identity(f, g)
    out = LeveledCochain(co, max(f.m + g.m - 1, 0), f.p + g.p, f.degree + g.degree - 1)
    if g.m == 0:
        return out
    for i in range(1, f.p + 1):
        out = out - bullet(f, g, -i)
    return out


def bullet_sum(f: LeveledCochain, g: LeveledCochain) -> LeveledCochain:
    """f•g = Σ_{i=1}^m f•_i g - Σ_{i=1}^p f•_{-i} g"""
    out = bullet_below(f, g)
    for i in range(1, f.m + 1):
        out = out + bullet(f, g, i)
    return out


def bracket(f: LeveledCochain, g: LeveledCochain) -> LeveledCochain:
    """{f, g} = f•g - (-1)^{(|f|+1)(|g|+1)} g•f"""
    return bullet_sum(f, g) - sign((f.degree + 1) * (g.degree + 1)) * bullet_sum(g, f)


def family_bracket(x: CochainFamily, y: CochainFamily) -> CochainFamily:
    return _family_product(bracket, x, y, degree_shift=-1)


def family_bullet_below(x: CochainFamily, g: LeveledCochain) -> CochainFamily:
    out = CochainFamily(x.coeffs, x.p + g.p, x.degree + g.degree - 1)
    for _, f in x.items():
        h = bullet_below(f, g)
        out = out + CochainFamily(h.coeffs, h.p, h.degree, {h.m: h})
    return out


def _leveled_family(f: LeveledCochain) -> CochainFamily:
    return CochainFamily(f.coeffs, f.p, f.degree, {f.m: f})


def cup_homotopy_residual(f: LeveledCochain, g: LeveledCochain) -> CochainFamily:
    """
    f∪g - f∪′g - [δ(g•_{<0}f) + (-1)^{|f|} δ(g)•_{<0}f + g•_{<0}δ(f)]

    g•_{<0}f 取 bullet_below 的号（f•g 里负下标部分带的那个减号），
    在这个约定下 Koszul 号对 |f|、|g| 的所有奇偶都成立。
    """
    lhs = _leveled_family(cup(f, g)) - _leveled_family(cup_prime(f, g))
    h = bullet_below(g, f)
    rhs = family_differential(_leveled_family(h))
    rhs = rhs + sign(f.degree) * family_bullet_below(omega_cochain_differential(g), f)
    for _, df in omega_cochain_differential(f).items():
        rhs = rhs + _leveled_family(bullet_below(g, df))
    return lhs - rhs


def cup_homotopy_check(f: LeveledCochain, g: LeveledCochain, ledger: Optional[CheckLedger] = None,
                       strict: bool = False) -> CheckLedger:
    """检查 cup 与 cup′ 之差由 g•_{<0}f 给出的同伦公式"""
    ledger = ledger or CheckLedger('cup-homotopy')
    ledger.tick()
    residual = cup_homotopy_residual(f, g)
    if not residual.is_zero():
        ledger.fail('cup-homotopy', f"f={f!r}, g={g!r}", repr(residual))
    if g.p == 0:
        ledger.tick()
        if cup(f, g) != cup_prime(f, g):
            ledger.fail('cup-equals-cup-prime', f"f={f!r}, g={g!r}")
    if strict:
        ledger.raise_if_failed()
    return ledger


def _cochain_pools(co: Coefficients, window: Window, levels: Sequence[int],
                   max_p: int) -> Dict[Tuple[int, int, int], List[CochainKey]]:
    """(m, p, n) -> 该双次数上的初等上链；只保留非空的格子"""
    pools: Dict[Tuple[int, int, int], List[CochainKey]] = {}
    for p in range(max_p + 1):
        for n in window.degrees():
            for inputs, word in cochain_keys(co, n, p, window.p_cap):
                if len(inputs) in levels:
                    pools.setdefault((len(inputs), p, n), []).append((inputs, word))
    return pools


def _random_leveled(co: Coefficients, rng: random.Random,
                    pools: Dict[Tuple[int, int, int], List[CochainKey]]) -> LeveledCochain:
    """随机格子上 1~2 个初等上链的有理组合"""
    m, p, n = rng.choice(sorted(pools))
    keys = pools[(m, p, n)]
    out = LeveledCochain(co, m, p, n)
    for inputs, word in rng.sample(keys, min(len(keys), rng.randint(1, 2))):
        out = out + LeveledCochain.elementary(co, inputs, word, rng.choice([-2, -1, 1, 3]))
    return out


def cup_homotopy_sample_check(A: FrobeniusAlgebra, window: Window, samples: int = 20, seed: int = 0,
                              max_p: int = 2, strict: bool = False) -> CheckLedger:
    """
    随机上链对上的 cup / cup′ 同伦公式

    f 与 g 都取 m ∈ {1, 2}、p <= max_p、次数在窗口内的组合；
    g•_{<0}f 需要 f 至少吃一个输入，所以 f 的 m 不取 0。
    """
    co = identity_coefficients(A)
    ledger = CheckLedger('cup-homotopy')
    pools = _cochain_pools(co, window, (1, 2), max_p)
    if not pools:
        ledger.notes['samples'] = 0
        return ledger
    rng = random.Random(seed)
    for _ in range(samples):
        f, g = _random_leveled(co, rng, pools), _random_leveled(co, rng, pools)
        cup_homotopy_check(f, g, ledger)
    ledger.notes['samples'] = samples
    logger.info(f"[cup 同伦] {A.name}: 抽样 {samples} 对, 失败 {len(ledger.failures)} 项")
    if strict:
        ledger.raise_if_failed()
    return ledger


# ---------- ⋆ 在同调上的乘法表 ----------

@dataclass
class StarTable:
    """
    约化 HH 类上的 ⋆ 乘法表

    classes: [(次数, 序号, 代表元的文字形式)]；entries: ((n1, i), (n2, j)) -> (n, 坐标)
    """
    algebra: str
    window: Window
    degree_shift: int
    classes: List[Tuple[int, int, str]] = field(default_factory=list)
    entries: Dict[Tuple[Tuple[int, int], Tuple[int, int]], Tuple[int, Tuple[Fraction, ...]]] = \
        field(default_factory=dict)
    full: bool = False
    ledger: Optional[CheckLedger] = None

    def product(self, left: Tuple[int, int], right: Tuple[int, int]) -> Optional[Tuple[int, Tuple[Fraction, ...]]]:
        return self.entries.get((left, right))

    def rows(self) -> List[List[str]]:
        """[左类, 右类, 乘积次数, 坐标] 的文字行，按类的规范顺序"""
        out = []
        for (left, right), (n, coords) in sorted(self.entries.items()):
            out.append([f"{left[0]}:{left[1]}", f"{right[0]}:{right[1]}", str(n),
                        " ".join(str(c) for c in coords)])
        return out


def build_star_table(A: FrobeniusAlgebra, window: Window, full: bool = False) -> Tuple[StarTable, HomologyReport]:
    """
    对窗口内每对约化 HH 类的代表元做 ⋆ 并约化；乘积次数越出窗口的项不记录

    Args:
        full: χ(A) = 0 时可以在完整（非约化）复形上取表
    """
    report = hh_homology(A, window, reduced=not full)
    table = StarTable(A.name, window, A.k - 1, full=full)
    reps: Dict[Tuple[int, int], ChainElement] = {}
    for n in window.degrees():
        for i, rep in enumerate(report.representatives(n)):
            reps[(n, i)] = rep
            table.classes.append((n, i, repr(rep)))
    for (left, x), (right, y) in cartesian(sorted(reps.items()), repeat=2):
        n = left[0] + right[0] + A.k - 1
        if n not in window:
            continue
        product = star(x, y)
        table.entries[(left, right)] = (n, report.reduce(n, product))
    logger.info(f"[GH 表] {A.name}: {len(table.classes)} 个类, {len(table.entries)} 个乘积")
    return table, report
