"""
共享 fixture：随包发布的三个代数只加载一次
"""
from fractions import Fraction
from pathlib import Path

import pytest

from hochschild_bench.algebra_io import load_algebra
from hochschild_bench.frobenius_algebra import AlgebraDescription, validate

FIXTURES = Path(__file__).resolve().parent.parent / 'fixtures'


@pytest.fixture(scope='session')
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope='session')
def S2():
    return load_algebra(FIXTURES / 'S2.json')


@pytest.fixture(scope='session')
def S3():
    return load_algebra(FIXTURES / 'S3.json')


@pytest.fixture(scope='session')
def CP2():
    return load_algebra(FIXTURES / 'CP2.json')


@pytest.fixture(scope='session', params=['S2', 'S3', 'CP2'])
def algebra(request):
    return load_algebra(FIXTURES / f'{request.param}.json')


@pytest.fixture(scope='session', params=['S2', 'S3'])
def sphere(request):
    return load_algebra(FIXTURES / f'{request.param}.json')


@pytest.fixture(scope='session')
def S1():
    """A^1 ≠ 0 的例子：同调计算需要 p_cap"""
    desc = AlgebraDescription('S1', 1, [('1', 0), ('y', 1)], '1',
                              products={('y', 'y'): {}},
                              pairing={('1', 'y'): Fraction(1), ('y', '1'): Fraction(1)})
    return validate(desc)


@pytest.fixture(scope='session')
def S7dg():
    """d ≠ 0 的单连通例子：S^7 的模型加上一对无环元 da = b"""
    return load_algebra(FIXTURES / 'S7_dg.json')


@pytest.fixture(scope='session')
def S7():
    desc = AlgebraDescription('S7', 7, [('1', 0), ('x', 7)], '1',
                              products={('x', 'x'): {}},
                              pairing={('1', 'x'): Fraction(1), ('x', '1'): Fraction(1)})
    return validate(desc)
