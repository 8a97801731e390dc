"""
bench_config 测试：默认值、配置文件合并与校验
"""
import json

import pytest

from hochschild_bench import bench_config
from hochschild_bench.bench_config import BenchConfig, config_from_dict, get_config, load_config, set_config
from hochschild_bench.errors import SchemaError


class TestConfigFromDict:
    def test_defaults(self):
        cfg = config_from_dict({})
        assert cfg == BenchConfig()
        assert not cfg.explicit_window
        assert cfg.p_cap is None

    def test_partial_window(self):
        cfg = config_from_dict({'window': {'max': 4}})
        assert (cfg.window_min, cfg.window_max) == (0, 4)
        assert cfg.explicit_window

    @pytest.mark.parametrize("data, key", [
        ({'colour': 'red'}, 'colour'),
        ({'samples': True}, 'samples'),
        ({'seed': '7'}, 'seed'),
        ({'window': {'min': 5, 'max': 1}}, 'window'),
        ({'window': [0, 4]}, 'window'),
        ({'format': 'xml'}, 'format'),
        ({'use_cache': 'yes'}, 'use_cache'),
    ])
    def test_rejects(self, data, key):
        with pytest.raises(SchemaError) as info:
            config_from_dict(data)
        assert info.value.key == key

    def test_override_skips_none(self):
        cfg = BenchConfig().override(samples=5, seed=None)
        assert cfg.samples == 5 and cfg.seed == 0

    def test_echo_has_no_paths(self):
        echo = BenchConfig().echo()
        assert echo['window'] == [0, 8]
        assert 'cache_dir' not in echo and 'log_dir' not in echo


class TestLoadConfig:
    def test_file(self, tmp_path):
        path = tmp_path / 'bench.json'
        path.write_text(json.dumps({'samples': 9, 'format': 'json'}), encoding='utf-8')
        cfg = load_config(str(path))
        assert cfg.samples == 9 and cfg.format == 'json'

    def test_unreadable_file_falls_back(self, tmp_path):
        path = tmp_path / 'bench.json'
        path.write_text('{ not json', encoding='utf-8')
        assert load_config(str(path)) == BenchConfig()

    def test_top_level_must_be_object(self, tmp_path):
        path = tmp_path / 'bench.json'
        path.write_text('[1, 2]', encoding='utf-8')
        with pytest.raises(SchemaError):
            load_config(str(path))

    def test_working_directory_file(self, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        assert load_config() == BenchConfig()
        (tmp_path / bench_config.CONFIG_FILE_NAME).write_text('{"seed": 3}', encoding='utf-8')
        assert load_config().seed == 3

    def test_process_config(self, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        monkeypatch.setattr(bench_config, '_config', None)
        assert get_config() is get_config()
        custom = BenchConfig(samples=2)
        set_config(custom)
        assert get_config() is custom
        set_config(None)
        assert get_config() == BenchConfig()
