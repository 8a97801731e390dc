"""
algebra_io 测试：代数文件与同态文件的解析和报错
"""
import json
from fractions import Fraction

import pytest

from hochschild_bench.algebra_io import (dump_algebra, load_algebra, parse_algebra, parse_algebra_text,
                                         parse_morphism, parse_morphism_text)
from hochschild_bench.errors import InputError, ParseError, SchemaError

from .conftest import FIXTURES

S2_TEXT = (FIXTURES / 'S2.json').read_text(encoding='utf-8')


def _with(**changes):
    data = json.loads(S2_TEXT)
    for key, value in changes.items():
        if value is None:
            data.pop(key)
        else:
            data[key] = value
    return json.dumps(data)


class TestParseAlgebra:
    def test_fixture_fields(self):
        desc = parse_algebra(FIXTURES / 'CP2.json')
        assert desc.name == 'CP2'
        assert desc.degree_k == 4
        assert desc.basis == [('1', 0), ('x', 2), ('x2', 4)]
        assert desc.products[('x', 'x')] == {'x2': Fraction(1)}
        assert desc.pairing[('x', 'x')] == 1

    @pytest.mark.parametrize("name", ['S2', 'S3', 'CP2'])
    def test_dump_is_parse_inverse(self, name):
        desc = parse_algebra(FIXTURES / f'{name}.json')
        assert parse_algebra_text(dump_algebra(desc)) == desc

    def test_name_defaults_to_file_stem(self):
        text = _with(name=None)
        assert parse_algebra_text(text, 'algebras/sphere.json').name == 'sphere'

    def test_fraction_coefficients(self):
        text = _with(pairing=[["1", "x", "2/4"], ["x", "1", "1/2"]])
        assert parse_algebra_text(text).pairing[('1', 'x')] == Fraction(1, 2)

    def test_bad_json_reports_line(self):
        with pytest.raises(ParseError) as info:
            parse_algebra_text('{\n  "name": "S2",\n  oops\n}')
        assert info.value.line == 3

    @pytest.mark.parametrize("coeff", [1.5, "1/0", "half"])
    def test_rejects_inexact_coefficients(self, coeff):
        with pytest.raises(ParseError):
            parse_algebra_text(_with(pairing=[["1", "x", coeff]]))

    @pytest.mark.parametrize("text, key", [
        (_with(colour="red"), 'colour'),
        (_with(unit=None), 'unit'),
        (_with(degree_k=None), 'degree_k'),
        (_with(basis=[["1", 0], ["1", 2]]), 'basis'),
        (_with(products=[["x", "y", {}]]), 'products'),
        (_with(differential={"x": {"z": "1"}}), 'differential'),
        (_with(unit="e"), 'unit'),
    ])
    def test_schema_errors(self, text, key):
        with pytest.raises(SchemaError) as info:
            parse_algebra_text(text)
        assert info.value.key == key
        assert info.value.exit_code == 2

    def test_missing_file(self, tmp_path):
        with pytest.raises(ParseError) as info:
            parse_algebra(tmp_path / 'nope.json')
        assert info.value.line is None
        assert isinstance(info.value, InputError)

    def test_load_is_cached(self):
        assert load_algebra(FIXTURES / 'S2.json') is load_algebra(FIXTURES / 'S2.json')


class TestParseMorphism:
    def test_fixture(self):
        desc = parse_morphism(FIXTURES / 'scale2.json')
        assert desc.source == FIXTURES / 'S3.json'
        assert desc.target == FIXTURES / 'S3.json'
        assert desc.entries == {'x': {'x': Fraction(2)}}
        assert desc.direction == 'forward'
        assert parse_morphism(FIXTURES / 'scale2_back.json').direction == 'backward'
        assert parse_morphism(FIXTURES / 'S3_zero.json').entries == {'x': {}}

    def test_paths_are_relative_to_base(self, tmp_path):
        text = json.dumps({"source": "a.json", "target": "b.json", "entries": []})
        desc = parse_morphism_text(text, tmp_path)
        assert desc.source == tmp_path / 'a.json'
        assert desc.entries == {}

    @pytest.mark.parametrize("data, key", [
        ({"source": "a", "target": "b", "entries": [], "direction": "sideways"}, 'direction'),
        ({"source": "a", "entries": []}, 'target'),
        ({"source": "a", "target": "b", "entries": [], "scale": 2}, 'scale'),
        ({"source": "a", "target": "b",
          "entries": [{"from": "x", "to": []}, {"from": "x", "to": []}]}, 'entries'),
        ({"source": "a", "target": "b", "entries": [{"from": "x", "to": [{"basis": "x"}]}]}, 'entries.to'),
    ])
    def test_schema_errors(self, tmp_path, data, key):
        with pytest.raises(SchemaError) as info:
            parse_morphism_text(json.dumps(data), tmp_path)
        assert info.value.key == key
