"""Content-addressed on-disk cache for enumerations and orbit partitions.

Each entry is one file named ``<key>.<kind>.bin`` holding a small JSON
header plus a flat integer payload, followed by a SHA-256 digest of
everything before it.  Corrupt entries (bad magic, bad digest, bad
header) are discarded and recomputed with a warning rather than trusted.

Concurrent invocations are tolerated via advisory whole-file locks
(shared for reads, exclusive for writes) and atomic replace on write.
"""

from __future__ import annotations

import fcntl
import hashlib
import json
import os
import struct
import warnings
from array import array
from pathlib import Path

_MAGIC = b"HWZCACH1"


class CacheCorrupt(Warning):
    """A cache file failed validation and was ignored."""


def _encode(header: dict, data: list[int]) -> bytes:
    payload = array("q", data).tobytes()
    head = json.dumps(header, sort_keys=True, separators=(",", ":")).encode()
    body = _MAGIC + struct.pack(">I", len(head)) + head + payload
    return body + hashlib.sha256(body).digest()


def _decode(blob: bytes) -> tuple[dict, list[int]]:
    if len(blob) < len(_MAGIC) + 4 + 32 or not blob.startswith(_MAGIC):
        raise ValueError("bad magic or truncated file")
    body, digest = blob[:-32], blob[-32:]
    if hashlib.sha256(body).digest() != digest:
        raise ValueError("digest mismatch")
    (head_len,) = struct.unpack(">I", body[len(_MAGIC):len(_MAGIC) + 4])
    head_start = len(_MAGIC) + 4
    header = json.loads(body[head_start:head_start + head_len].decode())
    payload = body[head_start + head_len:]
    arr = array("q")
    arr.frombytes(payload)
    return header, list(arr)


class ResultCache:
    """Keyed store of integer arrays; a disabled cache ignores all calls."""

    def __init__(self, directory: str | os.PathLike | None, enabled: bool = True):
        self.directory = Path(directory) if directory is not None else None
        self.enabled = enabled and self.directory is not None
        self.hits = 0
        self.misses = 0

    def _path(self, key: str, kind: str) -> Path:
        assert self.directory is not None
        return self.directory / f"{key}.{kind}.bin"

    def load(self, key: str, kind: str) -> tuple[dict, list[int]] | None:
        if not self.enabled:
            return None
        path = self._path(key, kind)
        try:
            with open(path, "rb") as fh:
                fcntl.flock(fh.fileno(), fcntl.LOCK_SH)
                try:
                    blob = fh.read()
                finally:
                    fcntl.flock(fh.fileno(), fcntl.LOCK_UN)
        except FileNotFoundError:
            self.misses += 1
            return None
        try:
            header, data = _decode(blob)
            if header.get("key") != key or header.get("kind") != kind:
                raise ValueError("header does not match the requested entry")
        except (ValueError, json.JSONDecodeError) as exc:
            warnings.warn(
                f"discarding corrupt cache entry {path.name}: {exc}", CacheCorrupt
            )
            try:
                os.unlink(path)
            except OSError:
                pass
            self.misses += 1
            return None
        self.hits += 1
        return header.get("meta", {}), data

    def store(self, key: str, kind: str, meta: dict, data: list[int]) -> None:
        if not self.enabled:
            return
        assert self.directory is not None
        self.directory.mkdir(parents=True, exist_ok=True)
        path = self._path(key, kind)
        blob = _encode({"key": key, "kind": kind, "meta": meta}, data)
        tmp = path.with_suffix(".tmp." + str(os.getpid()))
        lock_path = path.with_suffix(".lock")
        with open(lock_path, "w") as lock_fh:
            fcntl.flock(lock_fh.fileno(), fcntl.LOCK_EX)
            try:
                with open(tmp, "wb") as fh:
                    fh.write(blob)
                    fh.flush()
                    os.fsync(fh.fileno())
                os.replace(tmp, path)
            finally:
                fcntl.flock(lock_fh.fileno(), fcntl.LOCK_UN)
