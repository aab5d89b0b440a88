import json
import logging

import pytest

from oglab import cache
from oglab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_cold_then_warm_ring(tmp_path, capsys):
    args = ("--cache-dir", str(tmp_path), "ring", "--d", "5", "--m", "3", "--json")
    code1, cold = run(capsys, *args)
    code2, warm = run(capsys, *args)
    assert code1 == code2 == 0
    a, b = json.loads(cold), json.loads(warm)
    assert (a["cache"], b["cache"]) == (False, True)
    for rep in (a, b):
        rep.pop("cache")
        rep.pop("elapsed_ms")
    assert a == b
    _, s1 = run(capsys, "--stable", *args)
    _, s2 = run(capsys, "--stable", *args)
    assert s1 == s2


def test_cache_file_layout(tmp_path):
    og, action, hit = cache.load_or_build(2, 1, tmp_path)
    assert not hit
    data = json.loads(cache.cache_path(2, 1, tmp_path).read_text())
    assert data["version"] == cache.CACHE_VERSION
    assert (data["d"], data["m"]) == (2, 1)
    assert [g["name"] for g in data["generators"]] == ["w1", "z1", "z2", "z3"]
    comp = data["components"]["2"]
    assert len(comp["basis"]) == 3
    assert all(isinstance(row, str) for row in comp["reduction_rows"])
    assert set(data["steenrod"]) == {"w1", "z1", "z2", "z3"}
    assert data["hash"] == cache.content_hash(data)


def test_version_bump_invalidates(tmp_path, monkeypatch):
    cache.load_or_build(2, 1, tmp_path)
    assert cache.load_or_build(2, 1, tmp_path)[2]
    monkeypatch.setattr(cache, "CACHE_VERSION", "9.9.9+f1")
    assert not cache.load_or_build(2, 1, tmp_path)[2]
    assert cache.load_or_build(2, 1, tmp_path)[2]


@pytest.mark.parametrize("damage", [
    lambda text: "{not json",
    lambda text: text.replace('"w1"', '"w9"', 1),
])
def test_corrupt_cache_rebuilds_with_warning(tmp_path, caplog, damage):
    og, _, _ = cache.load_or_build(3, 1, tmp_path)
    f = cache.cache_path(3, 1, tmp_path)
    f.write_text(damage(f.read_text()))
    with caplog.at_level(logging.WARNING, logger="oglab.cache"):
        og2, action, hit = cache.load_or_build(3, 1, tmp_path)
    assert not hit and action is not None
    assert og2.ranks == og.ranks
    assert "discarding cache" in caplog.text
    assert cache.load_or_build(3, 1, tmp_path)[2]


def test_no_cache_forces_rebuild(tmp_path, capsys):
    base = ("--cache-dir", str(tmp_path))
    run(capsys, *base, "ring", "--d", "3", "--m", "2", "--json")
    f = cache.cache_path(3, 2, tmp_path)
    before = f.stat().st_mtime_ns
    _, out = run(capsys, *base, "ring", "--d", "3", "--m", "2", "--json", "--no-cache")
    assert json.loads(out)["cache"] is False
    assert f.stat().st_mtime_ns == before


def test_environment_variable(tmp_path, monkeypatch):
    monkeypatch.setenv(cache.ENV_VAR, str(tmp_path / "env"))
    assert cache.cache_dir() == tmp_path / "env"
    cache.load_or_build(2, 1)
    assert (tmp_path / "env" / "og-d2-m1.json").exists()
