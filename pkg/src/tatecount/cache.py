"""Append-only JSON-lines cache of count records."""
from __future__ import annotations

import json
import threading
from pathlib import Path

from . import __version__
from .enumeration import CountRecord

DEFAULT_PATH = "motivic-cache.jsonl"


class CountCache:
    """Records keyed by (canonical space, q, method); entries from other versions are ignored."""

    def __init__(self, path: str | Path = DEFAULT_PATH, version: str = __version__):
        self.path = Path(path)
        self.version = version
        self._lock = threading.Lock()
        self._entries: dict[tuple[str, int, str], CountRecord] = {}
        if self.path.exists():
            with self.path.open() as fh:
                for line in fh:
                    line = line.strip()
                    if not line:
                        continue
                    try:
                        row = json.loads(line)
                    except json.JSONDecodeError:
                        continue
                    if row.get("version") != version:
                        continue
                    rec = CountRecord.from_json(row["record"])
                    self._entries[(rec.space, rec.q, rec.method)] = rec

    def get(self, space: str, q: int, method: str) -> CountRecord | None:
        return self._entries.get((space, q, method))

    def put(self, rec: CountRecord) -> None:
        key = (rec.space, rec.q, rec.method)
        with self._lock:
            if key in self._entries:
                return
            self._entries[key] = rec
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with self.path.open("a") as fh:
                fh.write(json.dumps({"version": self.version, "record": rec.to_json()}) + "\n")

    def __len__(self):
        return len(self._entries)
