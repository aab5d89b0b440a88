"""On-disk cache of derived OG presentations and their Steenrod tables."""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path

from platformdirs import user_cache_dir

from . import __version__
from .ogcalc import OGRing, SteenrodAction, build_og_ring, compute_steenrod_action

log = logging.getLogger(__name__)

FORMAT = 1
CACHE_VERSION = f"{__version__}+f{FORMAT}"
ENV_VAR = "OGLAB_CACHE_DIR"


def cache_dir(path: str | os.PathLike | None = None) -> Path:
    if path is None:
        path = os.environ.get(ENV_VAR) or user_cache_dir("oglab")
    return Path(path)


def cache_path(d: int, m: int, path=None) -> Path:
    return cache_dir(path) / f"og-d{d}-m{m}.json"


def content_hash(payload: dict) -> str:
    body = {k: v for k, v in payload.items() if k != "hash"}
    blob = json.dumps(body, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def _load(file: Path, d: int, m: int):
    data = json.loads(file.read_text())
    if data.get("version") != CACHE_VERSION:
        raise ValueError(f"cache version {data.get('version')} != {CACHE_VERSION}")
    if (data.get("d"), data.get("m")) != (d, m):
        raise ValueError("cache key mismatch")
    if data.get("hash") != content_hash(data):
        raise ValueError("cache content hash mismatch")
    og = OGRing.from_json(data)
    action = SteenrodAction.from_json(og, data["steenrod"]) if "steenrod" in data else None
    return og, action


def _store(file: Path, og: OGRing, action: SteenrodAction | None) -> None:
    payload = {"version": CACHE_VERSION, **og.to_json()}
    if action is not None:
        payload["steenrod"] = action.to_json()
    payload["hash"] = content_hash(payload)
    file.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=file.parent, prefix=file.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(payload, fh, sort_keys=True)
        os.replace(tmp, file)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_or_build(d: int, m: int, path=None, use_cache: bool = True
                  ) -> tuple[OGRing, SteenrodAction | None, bool]:
    """Return (ring, Steenrod action or None if incomplete, cache hit flag)."""
    file = cache_path(d, m, path)
    if use_cache and file.exists():
        try:
            og, action = _load(file, d, m)
            if action is not None or not og.complete:
                return og, action, True
        except Exception as exc:  # corrupt or stale: rebuild
            log.warning("discarding cache %s: %s", file, exc)
    og = build_og_ring(d, m)
    action = compute_steenrod_action(og) if og.complete else None
    if use_cache:
        _store(file, og, action)
    return og, action, False
