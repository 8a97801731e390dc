"""
chain_products 测试：⋆ 乘积、Leibniz 偏差、θ、cup / cup′ 与 •_i
"""
import pytest

from hochschild_bench.errors import IndexOutOfRange
from hochschild_bench.chain_products import (anomaly_check, bracket, build_star_table, bullet, bullet_below, cup,
                                             cup_associativity_check, cup_homotopy_check, cup_homotopy_residual,
                                             cup_homotopy_sample_check, cup_prime,
                                             de_rham_cocycle, kappa_concat, leibniz_anomaly, leibniz_closed_form,
                                             star, star_associativity_check, theta, theta_injectivity_check,
                                             unit_cochain)
from hochschild_bench.hochschild_complexes import ChainElement, LeveledCochain, Window, Word, identity_coefficients


def _one(A):
    return ChainElement.from_names(A, [], '1')


class TestStar:
    def test_unit_times_unit(self, sphere):
        product = star(_one(sphere), _one(sphere))
        assert product == ChainElement.from_names(sphere, ['x'], '1', -1)
        assert product.degree == sphere.k - 1

    def test_s3_bar_powers_multiply(self, S3):
        for p in range(3):
            for q in range(3):
                u = ChainElement.from_names(S3, ['x'] * p, '1')
                v = ChainElement.from_names(S3, ['x'] * q, '1')
                product = star(u, v)
                assert set(product.terms) == {Word((S3.index('x'),) * (p + q + 1), S3.unit)}
                assert abs(product.terms[Word((S3.index('x'),) * (p + q + 1), S3.unit)]) == 1

    def test_anomaly_closed_form(self, sphere):
        ledger = anomaly_check(sphere, Window(0, 6))
        assert ledger.passed, ledger.to_dict()
        assert ledger.notes['pairs'] > 0

    def test_anomaly_vanishes_in_positive_bar_length(self, S2):
        u = ChainElement.from_names(S2, ['x'], '1')
        v = ChainElement.from_names(S2, ['x', 'x'], 'x')
        assert leibniz_anomaly(u, v).is_zero()
        assert leibniz_closed_form(u, v).is_zero()

    def test_anomaly_with_constant_right_factor(self, S2):
        u = ChainElement.from_names(S2, ['x'], '1')
        one = _one(S2)
        direct = leibniz_anomaly(u, one)
        assert not direct.is_zero()
        assert direct == leibniz_closed_form(u, one)
        assert leibniz_anomaly(one, one).is_zero()

    def test_associativity(self, S3):
        ledger = star_associativity_check(S3, Window(0, 5), max_total=9)
        assert ledger.passed, ledger.to_dict()
        assert ledger.checked > 0


class TestStarTable:
    def test_s3_products(self, S3):
        table, report = build_star_table(S3, Window(1, 8))
        assert [(n, i) for n, i, _ in table.classes] == [(n, 0) for n in range(2, 9)]
        n, coords = table.product((2, 0), (2, 0))
        assert n == 6 and abs(coords[0]) == 1
        assert table.product((3, 0), (3, 0)) == (8, (0,))
        # 乘积次数越出窗口的不记录
        assert table.product((8, 0), (8, 0)) is None
        assert all(len(row) == 4 for row in table.rows())
        assert report.dim(1) == 0


class TestTheta:
    def test_de_rham_values(self, S3):
        d = de_rham_cocycle(S3)
        x = S3.index('x')
        assert (d.m, d.p, d.degree) == (1, 1, 0)
        assert d.value((x,)) == {Word((x,), S3.unit): 1}

    def test_theta_raises_level(self, S2):
        f = theta(de_rham_cocycle(S2))
        assert (f.m, f.p) == (2, 2)
        x = S2.index('x')
        assert f.value((x, x)) == {Word((x, x), S2.unit): 1}

    def test_injective(self, sphere):
        ledger = theta_injectivity_check(sphere, Window(-2, 4))
        assert ledger.passed, ledger.to_dict()


class TestCup:
    def test_associativity_and_units(self, sphere):
        cochains = [unit_cochain(sphere), de_rham_cocycle(sphere)]
        ledger = cup_associativity_check(cochains)
        assert ledger.passed, ledger.to_dict()

    def test_de_rham_squared(self, S3):
        d = de_rham_cocycle(S3)
        x = S3.index('x')
        square = cup(d, d)
        assert (square.m, square.p) == (2, 2)
        assert square.value((x, x)) == {Word((x, x), S3.unit): 1}

    def test_kappa_concat(self, S3):
        u = ChainElement.from_names(S3, ['x'], 'x')
        v = ChainElement.from_names(S3, ['x'], '1')
        assert kappa_concat(u, v) == ChainElement.from_names(S3, ['x', 'x'], 'x')

    def test_cup_prime_with_constant_agrees(self, S2):
        one, d = unit_cochain(S2), de_rham_cocycle(S2)
        assert cup(d, one) == cup_prime(d, one)

    @pytest.mark.parametrize("pair", ['unit-dR', 'dR-unit', 'dR-dR'])
    def test_cup_homotopy(self, S2, pair):
        one, d = unit_cochain(S2), de_rham_cocycle(S2)
        f, g = {'unit-dR': (one, d), 'dR-unit': (d, one), 'dR-dR': (d, d)}[pair]
        ledger = cup_homotopy_check(f, g)
        assert ledger.passed, ledger.to_dict()

    def test_cup_homotopy_with_odd_degree_cochains(self, S2):
        # |f| = 1、|g| = -1：cup 与 cup′ 差一个号，差值全由 g•_{<0}δ(f) 给出
        co, x = identity_coefficients(S2), S2.index('x')
        f = LeveledCochain.elementary(co, (x,), Word((x, x), S2.unit))
        g = LeveledCochain.elementary(co, (x, x), Word((x,), S2.unit))
        assert (f.degree, g.degree) == (1, -1)
        w = Word((x, x, x), S2.unit)
        assert cup(f, g).value((x, x, x)) == {w: 1}
        assert cup_prime(f, g).value((x, x, x)) == {w: -1}
        assert bullet_below(g, f).is_zero()
        assert cup_homotopy_residual(f, g).is_zero()

    def test_cup_homotopy_through_differential_of_bullet(self, S2):
        co, x = identity_coefficients(S2), S2.index('x')
        f = LeveledCochain.elementary(co, (x,), Word((x,), x))
        d = de_rham_cocycle(S2)
        assert cup(f, d).value((x, x)) == {Word((x, x), x): 1}
        assert cup_prime(f, d).value((x, x)) == {Word((x, x), x): -1}
        assert bullet_below(d, f).value((x,)) == {Word((x, x), S2.unit): 1}
        ledger = cup_homotopy_check(f, d)
        assert ledger.passed, ledger.to_dict()

    @pytest.mark.parametrize("seed", [7, 11])
    def test_cup_homotopy_on_random_pairs(self, sphere, seed):
        ledger = cup_homotopy_sample_check(sphere, Window(-2, 3), samples=20, seed=seed)
        assert ledger.passed, ledger.to_dict()
        assert ledger.notes['samples'] == 20
        assert ledger.checked >= 20

    def test_cup_homotopy_sampling_is_reproducible(self, S2):
        first = cup_homotopy_sample_check(S2, Window(-1, 2), samples=5, seed=3)
        second = cup_homotopy_sample_check(S2, Window(-1, 2), samples=5, seed=3)
        assert first.to_dict() == second.to_dict()


class TestBullet:
    @pytest.mark.parametrize("i", [0, 2, -2])
    def test_index_range(self, S3, i):
        d = de_rham_cocycle(S3)
        with pytest.raises(IndexOutOfRange):
            bullet(d, d, i)

    def test_constant_has_no_slots(self, S3):
        one = unit_cochain(S3)
        with pytest.raises(IndexOutOfRange):
            bullet(one, one, 1)

    def test_below_vanishes_without_inputs(self, S3):
        d = de_rham_cocycle(S3)
        assert bullet_below(d, unit_cochain(S3)).is_zero()

    def test_bracket_with_unit_cochain(self, S2):
        # 1 的输出经 π 变成零，所以两边的 • 都消失
        one, d = unit_cochain(S2), de_rham_cocycle(S2)
        assert bracket(one, d).is_zero()
        assert bracket(d, one).is_zero()
