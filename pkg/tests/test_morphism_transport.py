"""
morphism_transport 测试：同态校验、复合、传递同构与 zig-zag 上的 GH 不变性
"""
from fractions import Fraction

import pytest

from hochschild_bench.errors import NotAnAlgebraMap, NotInvertible, NotSimplyConnected, PreconditionError
from hochschild_bench.hochschild_complexes import Window
from hochschild_bench.morphism_transport import (DgMorphism, compose_morphisms, csg_with_coefficients,
                                                 gh_invariance_check, identity_morphism, load_morphism, load_zigzag,
                                                 transport_iso, validate_morphism)
from hochschild_bench.tate_singular import tate_homology

from .conftest import FIXTURES


def _scale(A, factor):
    x = A.index('x')
    images = tuple({A.unit: Fraction(1)} if i == A.unit else {x: Fraction(factor)} if i == x else {i: Fraction(1)}
                   for i in range(A.dim))
    return DgMorphism(A, A, images, f"scale{factor}")


class TestValidateMorphism:
    def test_identity(self, algebra):
        phi = validate_morphism(identity_morphism(algebra))
        assert phi.quasi_iso
        assert phi.apply({algebra.unit: Fraction(3)}) == {algebra.unit: 3}

    def test_scaling_the_sphere_class(self, S3):
        phi = validate_morphism(_scale(S3, 2))
        assert phi.quasi_iso
        assert phi.image(S3.index('x')) == {S3.index('x'): 2}

    def test_unit_law(self, S3):
        images = ({}, {S3.index('x'): Fraction(1)})
        with pytest.raises(NotAnAlgebraMap) as info:
            validate_morphism(DgMorphism(S3, S3, images))
        assert info.value.law == 'unit'

    def test_degree_law(self, S3):
        images = ({S3.unit: Fraction(1)}, {S3.unit: Fraction(1)})
        with pytest.raises(NotAnAlgebraMap) as info:
            validate_morphism(DgMorphism(S3, S3, images))
        assert info.value.law == 'degree'
        assert info.value.witness == 'x'

    def test_cp2_scaling_is_not_multiplicative(self, CP2):
        # x ↦ 2x 要求 x2 ↦ 4·x2
        with pytest.raises(NotAnAlgebraMap) as info:
            validate_morphism(_scale(CP2, 2))
        assert info.value.law == 'multiplicative'
        assert info.value.witness == ('x', 'x')

    def test_zero_map_is_not_quasi_iso(self):
        phi, direction = load_morphism(FIXTURES / 'S3_zero.json')
        assert direction == 'forward'
        assert not phi.quasi_iso


class TestCompose:
    def test_compose_scalings(self):
        phi, _ = load_morphism(FIXTURES / 'scale2.json')
        twice = compose_morphisms(phi, phi)
        x = phi.source.index('x')
        assert twice.image(x) == {x: 4}
        assert twice.quasi_iso
        assert twice.name == 'scale2∘scale2'

    def test_mismatched_ends(self, S2, S3):
        with pytest.raises(PreconditionError):
            compose_morphisms(identity_morphism(S2), identity_morphism(S3))


class TestTransport:
    def test_scale2_matrices(self):
        phi, _ = load_morphism(FIXTURES / 'scale2.json')
        report = transport_iso(phi, Window(4, 7))
        assert report.matrices == {4: [[4]], 5: [[4]], 6: [[8]], 7: [[8]]}
        assert all(len(row) == 3 for row in report.rows())

    def test_composite_multiplies(self):
        phi, _ = load_morphism(FIXTURES / 'scale2.json')
        report = transport_iso(compose_morphisms(phi, phi), Window(4, 4))
        assert report.matrices[4] == [[16]]

    def test_identity_transports_to_identity(self, S3):
        report = transport_iso(validate_morphism(identity_morphism(S3)), Window(2, 5))
        for n, m in report.matrices.items():
            assert m == [[Fraction(int(i == j)) for j in range(len(m))] for i in range(len(m))]

    def test_coefficient_model_matches_target(self, S3):
        window = Window(4, 5)
        model = csg_with_coefficients(validate_morphism(identity_morphism(S3)), window, min_level=2)
        assert model.level >= 2
        assert model.dims() == tate_homology(S3, window).dims()

    def test_coefficient_model_needs_simple_connectivity(self, S1):
        with pytest.raises(NotSimplyConnected):
            csg_with_coefficients(identity_morphism(S1), Window(0, 1, p_cap=2))

    def test_zero_map_is_rejected(self):
        phi, _ = load_morphism(FIXTURES / 'S3_zero.json')
        with pytest.raises(NotInvertible):
            transport_iso(phi, Window(4, 5))

    def test_different_k(self, S2, S3):
        phi = DgMorphism(S2, S3, ({S3.unit: Fraction(1)}, {}), quasi_iso=True)
        with pytest.raises(PreconditionError):
            transport_iso(phi, Window(2, 3))


class TestInvariance:
    def test_identity_zigzag(self, S3):
        report = gh_invariance_check([(validate_morphism(identity_morphism(S3)), 'forward')], Window(4, 7))
        assert report.passed, report.ledger.to_dict()
        assert (report.source, report.target) == ('S3', 'S3')

    @pytest.mark.parametrize("fixture, window", [('scale2.json', Window(4, 7)), ('S2_scale2.json', Window(2, 5))])
    def test_scaling_is_invariant(self, fixture, window):
        report = gh_invariance_check(load_zigzag([FIXTURES / fixture]), window)
        assert report.passed, report.ledger.to_dict()

    def test_forward_then_backward_is_identity(self):
        steps = load_zigzag([FIXTURES / 'scale2.json', FIXTURES / 'scale2_back.json'])
        assert [direction for _, direction in steps] == ['forward', 'backward']
        report = gh_invariance_check(steps, Window(4, 6))
        assert report.passed
        assert report.composite == {4: [[1]], 5: [[1]], 6: [[1]]}

    def test_empty_zigzag(self):
        with pytest.raises(PreconditionError):
            gh_invariance_check([], Window(0, 2))

    def test_disconnected_zigzag(self, S2):
        steps = load_zigzag([FIXTURES / 'scale2.json']) + [(validate_morphism(identity_morphism(S2)), 'forward')]
        with pytest.raises(PreconditionError):
            gh_invariance_check(steps, Window(4, 5))
