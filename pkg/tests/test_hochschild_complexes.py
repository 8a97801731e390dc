"""
hochschild_complexes 测试：链复形、bar 分解、▶ 作用与窗口同调
"""
import pytest

from hochschild_bench import hochschild_complexes as hc
from hochschild_bench.chain_products import unit_cochain
from hochschild_bench.errors import ComputationError, NotSimplyConnected
from hochschild_bench.graded_signs import sign
from hochschild_bench.hochschild_complexes import (ChainElement, LeveledCochain, Window, Word, action_counit_check,
                                                   action_law_check, action_left, bar_contraction_check,
                                                   bar_square_check, chain_boundary, chain_complex,
                                                   cochain_differential, cochain_keys, differential_square_check,
                                                   enumerate_basis, hh_cohomology, hh_homology, horizontal_boundary,
                                                   identity_coefficients, reduced_projection)


class TestChainElement:
    def test_unit_in_bar_is_zero(self, S3):
        assert ChainElement.word(S3, [S3.unit], S3.index('x')).is_zero()

    def test_degree(self, S3, S2):
        assert ChainElement.from_names(S3, ['x', 'x'], '1').degree == 4
        assert ChainElement.from_names(S3, ['x'], 'x').degree == 5
        assert ChainElement.from_names(S2, ['x'], 'x').degree == 3
        mixed = ChainElement.from_names(S3, ['x'], '1') + ChainElement.from_names(S3, [], 'x')
        with pytest.raises(ComputationError):
            mixed.degree

    def test_arithmetic(self, S2):
        a = ChainElement.from_names(S2, ['x'], '1')
        assert (a - a).is_zero()
        assert 2 * a == a + a
        assert -a == a * -1


class TestBoundary:
    def test_sphere_s3_boundary_vanishes(self, S3):
        for p in range(4):
            assert chain_boundary(ChainElement.from_names(S3, ['x'] * p, '1')).is_zero()
            assert chain_boundary(ChainElement.from_names(S3, ['x'] * p, 'x')).is_zero()

    @pytest.mark.parametrize("p", [1, 2, 3, 4])
    def test_sphere_s2_boundary(self, S2, p):
        image = chain_boundary(ChainElement.from_names(S2, ['x'] * p, '1'))
        expected = ChainElement.from_names(S2, ['x'] * (p - 1), 'x', 1 + sign(p))
        assert image == expected

    def test_complex_matrices_compose_to_zero(self, algebra):
        cx = chain_complex(algebra)
        for n in range(0, 6):
            assert (cx.matrix(n + 1) @ cx.matrix(n)).is_zero()

    def test_differential_square(self, sphere):
        ledger = differential_square_check(sphere, Window(-2, 8))
        assert ledger.passed, ledger.to_dict()
        assert ledger.checked > 0

    def test_reduced_projection_drops_constants(self, S3):
        bar = ChainElement.from_names(S3, ['x'], '1')
        assert reduced_projection(ChainElement.from_names(S3, [], '1', 3) + bar) == bar
        top = ChainElement.from_names(S3, [], 'x')
        assert reduced_projection(top) == top

    def test_unit_cochain_is_a_cocycle(self, algebra):
        assert cochain_differential(unit_cochain(algebra)).is_zero()

    def test_cochain_differential_needs_level_zero(self, S3):
        f = LeveledCochain(identity_coefficients(S3), 0, 1, 1)
        with pytest.raises(ComputationError):
            cochain_differential(f)

    def test_differential_square_cp2(self, CP2):
        assert differential_square_check(CP2, Window(-2, 6), levels=(0, 1)).passed


class TestHomology:
    def test_s3_dims(self, S3):
        dims = hh_homology(S3, Window(0, 10)).dims()
        assert [dims[n] for n in range(11)] == [1, 0] + [1] * 9

    def test_s3_reduced_drops_degree_zero(self, S3):
        report = hh_homology(S3, Window(0, 10), reduced=True)
        assert report.dim(0) == 0
        assert report.dim(4) == 1

    def test_s2_dims(self, S2):
        dims = hh_homology(S2, Window(0, 10)).dims()
        assert all(dims[n] == 1 for n in range(11))

    def test_reduce_kills_boundaries(self, S2):
        report = hh_homology(S2, Window(0, 6))
        boundary = ChainElement.from_names(S2, ['x'], 'x', 2)
        assert report.reduce(3, boundary) == (0,)
        assert report.reduce(3, ChainElement.from_names(S2, ['x'] * 3, '1')) != (0,)
        assert len(report.representatives(3)) == 1

    def test_cohomology_covers_window(self, sphere):
        report = hh_cohomology(sphere, Window(-3, 3))
        assert sorted(report.dims()) == list(range(-3, 4))
        assert report.dim(0) >= 1

    def test_not_simply_connected_needs_p_cap(self, S1):
        assert not S1.is_simply_connected
        with pytest.raises(NotSimplyConnected):
            hh_homology(S1, Window(0, 2))
        report = hh_homology(S1, Window(0, 2, p_cap=2))
        assert report.approximate

    def test_window_bounds(self):
        with pytest.raises(ValueError):
            Window(3, 1)
        assert 2 in Window(0, 2) and 3 not in Window(0, 2)


class TestBasis:
    def test_chain_basis(self, S3):
        x = S3.index('x')
        assert enumerate_basis(S3, Window(0, 6), 5, 'chain') == [Word((x,), x)]
        assert enumerate_basis(S3, Window(0, 6), 0, 'reduced_chain') == []

    def test_unknown_kind(self, S3):
        with pytest.raises(ValueError):
            enumerate_basis(S3, Window(0, 2), 0, 'simplicial')

    def test_elementary_cochain(self, S3):
        coeffs = identity_coefficients(S3)
        keys = cochain_keys(coeffs, 0, 0)
        assert keys
        inputs, word = keys[0]
        f = LeveledCochain.elementary(coeffs, inputs, word)
        assert f.value(inputs) == {word: 1}
        assert f.degree == 0
        assert enumerate_basis(S3, Window(0, 2), 0, 'cochain') == keys


class TestBarResolution:
    def test_checks_pass(self, sphere):
        window = Window(0, 8)
        for check in (bar_contraction_check, bar_square_check, action_counit_check, action_law_check):
            ledger = check(sphere, window)
            assert ledger.passed, ledger.to_dict()

    def test_checks_pass_cp2(self, CP2):
        window = Window(0, 4)
        assert bar_contraction_check(CP2, window).passed
        assert action_counit_check(CP2, window).passed

    def test_head_sign_mutation_is_detected(self, S3, monkeypatch):
        monkeypatch.setattr(hc, '_bar_head_sign', lambda A, head: -sign(A.degree(head)))
        assert not bar_contraction_check(S3, Window(0, 6)).passed


class TestAction:
    def test_action_on_bar_word(self, S2, S3):
        w3 = ChainElement.from_names(S3, ['x'], '1')
        assert action_left(S3.index('x'), w3) == ChainElement.from_names(S3, ['x'], 'x')
        w2 = ChainElement.from_names(S2, ['x'], '1')
        assert action_left(S2.index('x'), w2) == ChainElement.from_names(S2, ['x'], 'x', -1)

    def test_unit_acts_trivially(self, S3):
        w = ChainElement.from_names(S3, ['x', 'x'], 'x')
        assert action_left(S3.unit, w) == w


class TestDifferentialFixture:
    def test_vertical_part_of_boundary(self, S7dg):
        x = ChainElement.from_names(S7dg, ['a'], '1')
        assert horizontal_boundary(x).is_zero()
        assert chain_boundary(x) == ChainElement.from_names(S7dg, ['b'], '1', -1)

    def test_horizontal_part_squares_to_zero(self, S7dg, S2):
        for A in (S7dg, S2):
            cx = chain_complex(A)
            checked = 0
            for n in range(0, 12):
                for w in cx.basis(n):
                    x = ChainElement.word(A, w.bars, w.tail)
                    assert horizontal_boundary(horizontal_boundary(x)).is_zero(), w
                    checked += 1
            assert checked > 0

    def test_differential_square(self, S7dg):
        ledger = differential_square_check(S7dg, Window(-1, 5))
        assert ledger.passed, ledger.to_dict()
        assert ledger.checked > 0

    def test_bar_square(self, S7dg):
        ledger = bar_square_check(S7dg, Window(0, 8))
        assert ledger.passed, ledger.to_dict()
        assert ledger.checked > 0

    def test_homology_matches_formal_sphere(self, S7dg, S7):
        window = Window(0, 14)
        assert hh_homology(S7dg, window).dims() == hh_homology(S7, window).dims()
