"""Thread-count resolution and order-preserving parallel mapping."""

import pytest

from ropebound.parallel import parallel_map, thread_count


def test_thread_count_env_override(monkeypatch):
    monkeypatch.setenv("ROPEBOUND_THREADS", "3")
    assert thread_count() == 3
    monkeypatch.setenv("ROPEBOUND_THREADS", "0")
    assert thread_count() == 1
    monkeypatch.setenv("ROPEBOUND_THREADS", "-5")
    assert thread_count() == 1
    monkeypatch.setenv("ROPEBOUND_THREADS", "many")
    with pytest.raises(ValueError):
        thread_count()


def test_thread_count_default(monkeypatch):
    monkeypatch.delenv("ROPEBOUND_THREADS", raising=False)
    assert thread_count() >= 1


def test_parallel_map_preserves_order():
    items = list(range(37))
    assert parallel_map(lambda x: x * x, items, max_workers=4) == \
        [x * x for x in items]


def test_parallel_map_degenerate_paths():
    assert parallel_map(str, [], max_workers=8) == []
    assert parallel_map(str, [7]) == ["7"]
    assert parallel_map(lambda x: -x, [1, 2, 3], max_workers=1) == [-1, -2, -3]


def test_parallel_map_matches_sequential(monkeypatch):
    monkeypatch.setenv("ROPEBOUND_THREADS", "2")
    items = [0.1 * k for k in range(25)]
    assert parallel_map(lambda x: x + 1.0, items) == [x + 1.0 for x in items]
