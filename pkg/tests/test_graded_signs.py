"""
graded_signs 测试：Koszul 符号与重排方式无关
"""
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.combinatorics import Permutation

from hochschild_bench.errors import IndexOutOfRange, SchemaError
from hochschild_bench.graded_signs import (GradedBasis, SignContext, adjacent_swap_sign, dual_differential,
                                           dual_pairing_embed, epsilon_prefix, koszul_swap_sign,
                                           permutation_sign, sign)


@st.composite
def degrees_and_order(draw, max_len=6):
    degrees = draw(st.lists(st.integers(min_value=0, max_value=7), min_size=0, max_size=max_len))
    order = draw(st.permutations(list(range(len(degrees)))))
    return degrees, order


class TestKoszul:
    @pytest.mark.parametrize("a, b, expected", [(0, 5, 1), (3, 3, -1), (2, 7, 1)])
    def test_swap(self, a, b, expected):
        assert koszul_swap_sign(a, b) == expected

    @pytest.mark.parametrize("degs, i, expected", [([], 0, 0), ([3], 1, 0), ([2, 3, 2], 3, 0), ([2], 1, 1)])
    def test_epsilon_prefix(self, degs, i, expected):
        assert epsilon_prefix(degs, i) == expected

    def test_epsilon_prefix_range(self):
        with pytest.raises(IndexOutOfRange):
            epsilon_prefix([1, 2], 3)
        with pytest.raises(IndexOutOfRange):
            epsilon_prefix([1, 2], -1)

    def test_sign(self):
        assert sign(0) == 1 and sign(3) == -1 and sign(-2) == 1


class TestPermutationSign:
    @given(degrees_and_order())
    @settings(max_examples=200, deadline=None)
    def test_independent_of_swap_sequence(self, data):
        degrees, order = data
        expected = permutation_sign(degrees, order)
        for strategy in ("bubble", "insertion", "selection"):
            assert adjacent_swap_sign(degrees, order, strategy) == expected

    @given(st.integers(min_value=0, max_value=6).flatmap(lambda n: st.permutations(list(range(n)))))
    @settings(max_examples=100, deadline=None)
    def test_odd_symbols_give_permutation_signature(self, order):
        degrees = [1] * len(order)
        oracle = Permutation(order).signature() if order else 1
        assert permutation_sign(degrees, order) == oracle

    @given(degrees_and_order())
    @settings(max_examples=50, deadline=None)
    def test_even_symbols_commute(self, data):
        degrees, order = data
        assert permutation_sign([2 * d for d in degrees], order) == 1

    def test_rejects_non_permutation(self):
        with pytest.raises(IndexOutOfRange):
            permutation_sign([1, 1], [0, 0])
        with pytest.raises(IndexOutOfRange):
            adjacent_swap_sign([1, 1], [1, 2])
        with pytest.raises(ValueError):
            adjacent_swap_sign([1, 1], [1, 0], strategy="shuffle")


class TestSignContext:
    def test_shifted_degrees(self):
        assert SignContext((3, 3)).permute([1, 0]) == -1
        assert SignContext((3, 3), shifted=True).permute([1, 0]) == 1
        ctx = SignContext((2, 3, 2), shifted=True)
        assert ctx.prefix(0) == 0
        assert ctx.prefix(1) == 1
        assert ctx.passing_sign(1, 1) == -1
        assert ctx.passing_sign(2, 1) == 1
        with pytest.raises(IndexOutOfRange):
            ctx.prefix(4)


class TestGradedBasis:
    def test_lookup(self):
        basis = GradedBasis((("1", 0), ("x", 3)))
        assert len(basis) == 2
        assert basis.index_of("x") == 1
        assert basis.degree(1) == 3
        assert basis.names == ["1", "x"]
        assert basis.degrees == [0, 3]

    def test_duplicate_and_unknown_names(self):
        with pytest.raises(SchemaError):
            GradedBasis((("x", 1), ("x", 2)))
        with pytest.raises(SchemaError):
            GradedBasis((("1", 0),)).index_of("y")


class TestDuals:
    def test_embedding_evaluation_order(self):
        evaluate = dual_pairing_embed({1: 5}, {0: 7})
        assert evaluate(0, 1) == 35
        assert evaluate(1, 0) == 0

    @pytest.mark.parametrize("alpha_degree", [0, 1, 2, 3])
    def test_dual_differential_squares_to_zero(self, alpha_degree):
        # 两项复形：e0 -> e1
        differential = {0: {1: 1}}
        d_alpha = dual_differential({1: 1}, alpha_degree, differential)
        assert d_alpha == {0: -sign(alpha_degree)}
        assert dual_differential(d_alpha, alpha_degree + 1, differential) == {}
