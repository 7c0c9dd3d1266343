"""
Line-delimited JSON result cache.

Each line is one :class:`CacheRecord`.  A lookup hits when command,
parameters and software version all match; later lines win.
"""
from __future__ import annotations

import json
import os
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional

from . import __version__

SCHEMA_VERSION = 1
ENV_VAR = "CYCLOKAPPA_CACHE"


@dataclass
class CacheRecord:
    command: str
    parameters: dict
    result: dict
    software_version: str = __version__
    timestamp: float = field(default_factory=time.time)
    schema_version: int = SCHEMA_VERSION

    def key(self) -> str:
        return _key(self.command, self.parameters, self.software_version)


def _key(command: str, parameters: dict, version: str) -> str:
    return json.dumps([command, parameters, version], sort_keys=True)


def resolve_path(path: Optional[str]) -> Optional[Path]:
    """``--cache`` wins over the environment variable; ``None`` disables caching."""
    p = path or os.environ.get(ENV_VAR)
    return Path(p) if p else None


class ResultCache:
    def __init__(self, path: Path):
        self.path = Path(path)
        self._index: dict[str, CacheRecord] = {}
        self.skipped = 0
        if self.path.exists():
            with self.path.open(encoding="utf-8") as f:
                for line in f:
                    line = line.strip()
                    if not line:
                        continue
                    try:
                        d = json.loads(line)
                    except json.JSONDecodeError:
                        self.skipped += 1
                        continue
                    if d.get("schema_version") != SCHEMA_VERSION:
                        self.skipped += 1
                        continue
                    rec = CacheRecord(**d)
                    self._index[rec.key()] = rec

    def __len__(self):
        return len(self._index)

    def get(self, command: str, parameters: dict) -> Optional[dict]:
        rec = self._index.get(_key(command, parameters, __version__))
        return None if rec is None else rec.result

    def put(self, command: str, parameters: dict, result: dict) -> CacheRecord:
        rec = CacheRecord(command, parameters, result)
        self._index[rec.key()] = rec
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.path.open("a", encoding="utf-8") as f:
            f.write(json.dumps(asdict(rec), sort_keys=True) + "\n")
        return rec

    def records(self) -> list[CacheRecord]:
        return list(self._index.values())

    def clear(self):
        self._index.clear()
        if self.path.exists():
            self.path.unlink()
