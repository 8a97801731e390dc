"""
workbench 测试：参数解析、窗口选择、命令执行与 main 的退出码和输出
"""
import json
import sys
from fractions import Fraction

import pytest

import workbench
from hochschild_bench.bench_config import BenchConfig
from hochschild_bench.hochschild_complexes import Window
from hochschild_bench.run_modes import Command

from .conftest import FIXTURES


def _explicit(low, high):
    return BenchConfig().override(window_min=low, window_max=high, explicit_window=True)


class TestArgs:
    def test_parse(self):
        command, inputs, values, switches = workbench.parse_args(
            ['hh', 'a.json', '--min', '0', '--no-cache', '--format', 'json'])
        assert command == 'hh'
        assert inputs == ['a.json']
        assert values == {'--min': '0', '--format': 'json'}
        assert switches == {'--no-cache'}

    @pytest.mark.parametrize("argv", [['hh', 'a.json', '--max'], ['hh', '--colour', 'red'], ['--no-cache']])
    def test_parse_errors(self, argv):
        with pytest.raises(ValueError):
            workbench.parse_args(argv)

    def test_flags_override_config(self):
        cfg = workbench.apply_flags(BenchConfig(), {'--max': '4', '--samples': '3'})
        assert (cfg.window_min, cfg.window_max, cfg.samples) == (0, 4, 3)
        assert cfg.explicit_window
        assert not workbench.apply_flags(BenchConfig(), {}).explicit_window

    @pytest.mark.parametrize("values", [{'--format': 'xml'}, {'--seed': 'seven'}])
    def test_bad_flags(self, values):
        with pytest.raises(ValueError):
            workbench.apply_flags(BenchConfig(), values)

    def test_resolve_window(self):
        assert workbench.resolve_window(Command.HHSG, BenchConfig()) == Window(-2, 10)
        assert workbench.resolve_window(Command.HHSG, _explicit(1, 3)) == Window(1, 3)


class TestRun:
    def test_hh_rows(self):
        report = workbench.run(Command.HH, [str(FIXTURES / 'S3.json')], _explicit(0, 4))
        rows = report.sections[0].rows
        assert [row[0] for row in rows] == [0, 1, 2, 3, 4]
        assert rows[0] == [0, 1, 0]
        assert [row[1] for row in rows] == [1, 0, 1, 1, 1]
        assert report.inputs == ['S3.json']

    def test_euler(self):
        report = workbench.run(Command.EULER, [str(FIXTURES / 'S2.json')], BenchConfig())
        section = report.sections[0]
        assert section.rows == [['x', Fraction(2)]]
        assert section.notes['is_zero'] is False

    def test_validate_passes(self):
        report = workbench.run(Command.VALIDATE, [str(FIXTURES / 'CP2.json')], BenchConfig())
        assert report.passed
        assert [ledger.name for ledger in report.ledgers] == ['casimir-identities', 'coalgebra', 'calabi-yau']

    def test_retract_check_samples_cup_homotopy(self):
        cfg = _explicit(0, 4).override(samples=5, seed=3)
        report = workbench.run(Command.RETRACT_CHECK, [str(FIXTURES / 'S3.json')], cfg)
        assert [ledger.name for ledger in report.ledgers] == ['retract', 'iota-cup', 'cup-homotopy']
        assert report.passed

    def test_transport(self):
        report = workbench.run(Command.TRANSPORT, [str(FIXTURES / 'scale2.json')], _explicit(4, 5))
        assert report.sections[0].rows == [[4, 0, (Fraction(4),)], [5, 0, (Fraction(4),)]]

    def test_needs_inputs(self):
        with pytest.raises(ValueError):
            workbench.run(Command.HH, [], BenchConfig())


@pytest.fixture
def bench_dir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    config = tmp_path / 'bench.json'
    config.write_text(json.dumps({'log_dir': str(tmp_path / 'logs'), 'cache_dir': str(tmp_path / 'cache')}),
                      encoding='utf-8')
    return tmp_path, config


def _main(monkeypatch, *args):
    monkeypatch.setattr(sys, 'argv', ['workbench.py', *args])
    with pytest.raises(SystemExit) as info:
        workbench.main()
    return info.value.code


class TestMain:
    def test_report_is_reproducible(self, bench_dir, monkeypatch):
        tmp_path, config = bench_dir
        args = ['hh', str(FIXTURES / 'S3.json'), '--max', '4', '--format', 'json', '--config', str(config)]
        assert _main(monkeypatch, *args, '--out', str(tmp_path / 'first.json')) == 0
        # 第二次命中缓存，第三次绕过缓存，三份字节相同
        assert _main(monkeypatch, *args, '--out', str(tmp_path / 'second.json')) == 0
        assert _main(monkeypatch, *args, '--no-cache', '--out', str(tmp_path / 'third.json')) == 0
        first = (tmp_path / 'first.json').read_bytes()
        assert first == (tmp_path / 'second.json').read_bytes() == (tmp_path / 'third.json').read_bytes()
        assert json.loads(first)['command'] == 'hh'
        assert list((tmp_path / 'logs').glob('workbench_*.log'))

    def test_missing_input(self, bench_dir, monkeypatch):
        tmp_path, config = bench_dir
        assert _main(monkeypatch, 'hh', str(tmp_path / 'nope.json'), '--config', str(config)) == 2
        assert workbench.log_file is None

    def test_schema_error_exit_code(self, bench_dir, monkeypatch):
        tmp_path, config = bench_dir
        bad = tmp_path / 'bad.json'
        bad.write_text('{"name": "bad", "degree_k": 2, "basis": [["1", 0]], "unit": "e"}', encoding='utf-8')
        assert _main(monkeypatch, 'validate', str(bad), '--config', str(config)) == 2
        assert workbench.log_file is None

    @pytest.mark.parametrize("args", [[], ['--help'], ['homotopy', 'a.json'], ['hh', 'a.json', '--config', 'nope.json']])
    def test_usage_errors(self, bench_dir, monkeypatch, args):
        assert _main(monkeypatch, *args) == 2
