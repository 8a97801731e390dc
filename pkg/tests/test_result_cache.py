"""
result_cache 测试：键的构成、命中与清理
"""
from hochschild_bench.result_cache import ResultCache


def _inputs(tmp_path, text='{"name": "A"}'):
    path = tmp_path / 'a.json'
    path.write_text(text, encoding='utf-8')
    return [path]


class TestKey:
    def test_depends_on_content_not_name(self, tmp_path):
        first = _inputs(tmp_path)
        other = tmp_path / 'copy.json'
        other.write_bytes(first[0].read_bytes())
        assert ResultCache.make_key(first, 'hh', {}) == ResultCache.make_key([other], 'hh', {})

    def test_depends_on_command_and_flags(self, tmp_path):
        paths = _inputs(tmp_path)
        base = ResultCache.make_key(paths, 'hh', {'seed': 0})
        assert base != ResultCache.make_key(paths, 'hhcoh', {'seed': 0})
        assert base != ResultCache.make_key(paths, 'hh', {'seed': 1})
        assert base == ResultCache.make_key(paths, 'hh', {'seed': 0})


class TestCache:
    def test_round_trip(self, tmp_path):
        cache = ResultCache(str(tmp_path / 'cache'))
        key = ResultCache.make_key(_inputs(tmp_path), 'hh', {})
        assert cache.get(key) is None
        cache.put(key, b'# hh\nline\n', status=1)
        assert cache.get(key) == (1, b'# hh\nline\n')
        assert (cache.hits, cache.misses) == (1, 1)

    def test_disabled(self, tmp_path):
        cache = ResultCache(str(tmp_path / 'cache'), enabled=False)
        cache.put('ab' * 32, b'x')
        assert cache.get('ab' * 32) is None
        assert not (tmp_path / 'cache').exists()

    def test_malformed_entry_is_a_miss(self, tmp_path):
        cache = ResultCache(str(tmp_path / 'cache'))
        key = 'cd' * 32
        entry = tmp_path / 'cache' / 'cd' / f'{key}.out'
        entry.parent.mkdir(parents=True)
        entry.write_bytes(b'garbage')
        assert cache.get(key) is None
        assert cache.misses == 1

    def test_clear(self, tmp_path):
        cache = ResultCache(str(tmp_path / 'cache'))
        cache.put('ab' * 32, b'1')
        cache.put('cd' * 32, b'2')
        assert cache.clear() == 2
        assert cache.get('ab' * 32) is None
        assert ResultCache(str(tmp_path / 'missing')).clear() == 0
