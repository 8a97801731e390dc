"""
tate_singular 测试：D^* 的微分、ι / Π / H 收缩、HH_sg 与长正合列、GH 表
"""
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hochschild_bench import chain_products
from hochschild_bench import tate_singular as ts
from hochschild_bench.algebra_io import load_algebra
from hochschild_bench.chain_products import theta
from hochschild_bench.errors import NotSimplyConnected, WindowOverflow
from hochschild_bench.graded_signs import sign
from hochschild_bench.hochschild_complexes import (ChainElement, LeveledCochain, Window, Word, cochain_keys,
                                                   identity_coefficients)
from hochschild_bench.tate_singular import (Pi, TateElement, bracket_on_hhsg, cup_on_hhsg, cup_table, gamma,
                                            gh_table, h_level, hh_sg, iota, iota_chain, iota_cup_check, jacobi_probe,
                                            les_check, pi_level, retract_check, tate_complex, tate_differential)

from .conftest import FIXTURES


@pytest.fixture(scope='module')
def sg(sphere):
    return hh_sg(sphere, Window(-2, 8))


class TestTateComplex:
    def test_gamma_of_unit_is_euler_class(self, S2, S3):
        assert gamma(S2, S2.unit) == {S2.index('x'): 2}
        assert gamma(S3, S3.unit) == {}
        assert gamma(S2, S2.index('x')) == {}

    def test_differential_of_unit_chain(self, S2):
        t = TateElement.of_chain(ChainElement.from_names(S2, [], '1'))
        assert t.degree == 1
        dt = tate_differential(t)
        assert dt.degree == 2
        assert dt.cochain.component(0).value(()) == {Word((), S2.index('x')): -2}
        assert dt.chain.is_zero()

    def test_matrices_square_to_zero(self, sphere):
        cx = tate_complex(sphere)
        for n in range(-2, 12):
            assert (cx.matrix(n + 1) @ cx.matrix(n)).is_zero()

    def test_matrices_square_to_zero_cp2(self, CP2):
        cx = tate_complex(CP2)
        for n in range(-2, 5):
            assert (cx.matrix(n + 1) @ cx.matrix(n)).is_zero()


class TestIota:
    def test_iota_of_bar_word(self, S3):
        x = S3.index('x')
        levels = iota_chain(ChainElement.from_names(S3, ['x'], '1'))
        assert list(levels) == [2]
        f = levels[2]
        assert (f.m, f.p) == (0, 2)
        assert f.value(()) == {Word((x, x), S3.unit): -1}

    def test_iota_of_top_class_s2(self, S2):
        x = S2.index('x')
        levels = iota_chain(ChainElement.from_names(S2, [], 'x'))
        assert levels[1].value(()) == {Word((x,), x): 1}

    @pytest.mark.parametrize("bars, tail", [([], '1'), (['x'], '1'), (['x', 'x'], 'x')])
    def test_pi_undoes_iota(self, S3, bars, tail):
        t = TateElement.of_chain(ChainElement.from_names(S3, bars, tail))
        assert Pi(iota(t)) == t

    def test_pi_of_constant_cochain(self, S2):
        co = identity_coefficients(S2)
        f = LeveledCochain(co, 0, 1, 1, {(): {Word((S2.index('x'),), S2.unit): Fraction(1)}})
        assert pi_level(f) == ChainElement.from_names(S2, [], '1')


@st.composite
def elementary_cochains(draw, algebra):
    co = identity_coefficients(algebra)
    n = draw(st.integers(min_value=-2, max_value=4))
    p = draw(st.integers(min_value=0, max_value=2))
    keys = [key for key in cochain_keys(co, n, p) if len(key[0]) <= 3]
    if not keys:
        return LeveledCochain(co, 0, p, n)
    inputs, word = draw(st.sampled_from(keys))
    return LeveledCochain.elementary(co, inputs, word, draw(st.sampled_from([-2, -1, 1, 3])))


class TestRetract:
    @pytest.mark.parametrize("name", ['S2', 'S3'])
    @given(data=st.data())
    @settings(max_examples=60, deadline=None)
    def test_pi_undoes_theta(self, name, data):
        A = load_algebra(FIXTURES / f'{name}.json')
        F = data.draw(elementary_cochains(A))
        assert pi_level(theta(F)) == F
        assert h_level(theta(F)).is_zero()

    def test_retract_identities(self, sphere):
        ledger = retract_check(sphere, Window(-2, 6), samples=50)
        assert ledger.passed, ledger.to_dict()
        assert ledger.notes['samples'] > 0

    def test_iota_sign_mutation_is_detected(self, S3, monkeypatch):
        monkeypatch.setattr(ts, '_iota_sign', lambda A, f, d: -sign(A.degree(f) * d))
        ledger = retract_check(S3, Window(-2, 6), samples=5)
        assert any(r.identity == 'pi-iota-identity' for r in ledger.failures)

    def test_iota_intertwines_products(self, sphere):
        ledger = iota_cup_check(sphere, Window(0, 6), samples=50)
        assert ledger.passed, ledger.to_dict()

    def test_star_sign_mutation_is_detected(self, S2, monkeypatch):
        original = chain_products._star_sign
        monkeypatch.setattr(chain_products, '_star_sign', lambda *args: -original(*args))
        assert not iota_cup_check(S2, Window(0, 6), samples=30).passed

    def test_requires_simple_connectivity(self, S1):
        with pytest.raises(NotSimplyConnected):
            retract_check(S1, Window(0, 2, p_cap=2))
        with pytest.raises(NotSimplyConnected):
            hh_sg(S1, Window(0, 2, p_cap=2))


class TestSingularHomology:
    def test_case_split_agrees(self, sg):
        assert sg.case_split_ok, (sg.dims(), sg.case_dims)
        assert sg.les is not None and sg.les.passed

    def test_s2_matches_cohomology_then_homology(self, S2):
        report = hh_sg(S2, Window(-2, 8))
        for i in range(-2, 9):
            if i <= 1:
                assert report.dim(i) == report.cohomology_dims[i]
            else:
                assert report.dim(i) == report.chain_dims[i - 1]

    def test_les_standalone(self, S2):
        ledger = les_check(S2, Window(-1, 5))
        assert ledger.passed, ledger.to_dict()
        assert 'short_form' in ledger.notes

    def test_products_leave_window(self, S3):
        report = hh_sg(S3, Window(-2, 8))
        with pytest.raises(WindowOverflow):
            cup_on_hhsg(report, 6, (1,), 6, (1,))
        with pytest.raises(WindowOverflow):
            report.reduce(20, TateElement(S3, 20))

    def test_cup_table_stays_in_window(self, S3):
        report = hh_sg(S3, Window(-1, 4))
        table = cup_table(report)
        assert table
        for (left, right), (n, coords) in table.items():
            assert n == left[0] + right[0]
            assert n in report.window
            assert len(coords) == report.dim(n)

    def test_bracket_of_constants_vanishes(self, S3):
        # HH_sg^0(S3) 只由常值上链 1 张成，它与自身的括号没有可插入的槽位
        report = hh_sg(S3, Window(-2, 4))
        assert report.dim(0) == 1
        result = bracket_on_hhsg(report, 0, (1,), 0, (1,))
        assert len(result) == report.dim(-1)
        assert not any(result)
        jacobi = jacobi_probe(report, [(0, (1,))])
        assert jacobi.passed and jacobi.checked == 2
        assert not any(jacobi.notes["residuals"][(0, 0, 0)])


class TestGhTable:
    def test_cup_agreement_s3(self, S3):
        table = gh_table(S3, Window(1, 8))
        assert table.ledger.passed, table.ledger.to_dict()
        assert table.ledger.checked > 0
        n, coords = table.product((2, 0), (2, 0))
        assert n == 6 and coords[0] != 0

    def test_requires_simple_connectivity(self, S1):
        with pytest.raises(NotSimplyConnected):
            gh_table(S1, Window(0, 2, p_cap=2))


class TestDifferentialFixture:
    def test_matrices_square_to_zero(self, S7dg):
        cx = tate_complex(S7dg)
        for n in range(-1, 9):
            assert (cx.matrix(n + 1) @ cx.matrix(n)).is_zero()

    def test_retract_identities(self, S7dg):
        ledger = retract_check(S7dg, Window(-1, 4), samples=20)
        assert ledger.passed, ledger.to_dict()
        assert ledger.notes['samples'] > 0

    def test_hh_sg_matches_formal_sphere(self, S7dg, S7):
        # 1 ↦ 1, x ↦ w 是拟同构，两边的 HH_sg 维数一致
        window = Window(5, 8)
        report = hh_sg(S7dg, window)
        assert report.case_split_ok, (report.dims(), report.case_dims)
        assert report.les is not None and report.les.passed
        assert report.dims() == hh_sg(S7, window).dims()
