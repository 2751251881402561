"""Append-only JSON-lines store of command results.

Each line is one :class:`RunRecord`.  A record is looked up by its command
and configuration; the payload is stored exactly as first produced, so a
cached answer prints byte-for-byte the same as the original run.
"""

from __future__ import annotations

import fcntl
import json
import os
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

ENV_VAR = "TRISOLVE_RESULTS"
DEFAULT_PATH = Path("trisolve-results.jsonl")


def results_path(explicit: str | Path | None = None) -> Path:
    if explicit:
        return Path(explicit)
    env = os.environ.get(ENV_VAR)
    return Path(env) if env else DEFAULT_PATH


def config_key(command: str, config: dict[str, Any]) -> str:
    return json.dumps({"command": command, "config": config}, sort_keys=True, separators=(",", ":"))


@dataclass
class RunRecord:
    command: str
    config: dict[str, Any]
    status: str
    payload: dict[str, Any]
    problem: str | None = None
    argv: list[str] = field(default_factory=list)
    elapsed_s: float = 0.0
    nodes: int = 0
    timestamp: float = 0.0

    @property
    def key(self) -> str:
        return config_key(self.command, self.config)

    def to_line(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, separators=(",", ":"))


class ResultStore:
    """Reads the whole file on open; appends hold an exclusive lock so
    concurrent writers never interleave lines."""

    def __init__(self, path: str | Path | None = None):
        self.path = results_path(path)
        self._latest: dict[str, RunRecord] = {}
        if self.path.exists():
            with self.path.open(encoding="utf-8") as fh:
                for lineno, line in enumerate(fh, 1):
                    line = line.strip()
                    if not line:
                        continue
                    try:
                        rec = RunRecord(**json.loads(line))
                    except (json.JSONDecodeError, TypeError) as exc:
                        raise ValueError(f"{self.path}:{lineno}: bad record: {exc}") from None
                    self._latest[rec.key] = rec

    def __len__(self) -> int:
        return len(self._latest)

    def lookup(self, command: str, config: dict[str, Any]) -> RunRecord | None:
        return self._latest.get(config_key(command, config))

    def append(self, rec: RunRecord) -> RunRecord:
        if not rec.timestamp:
            rec.timestamp = time.time()
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.path.open("a", encoding="utf-8") as fh:
            fcntl.flock(fh, fcntl.LOCK_EX)
            try:
                fh.write(rec.to_line() + "\n")
                fh.flush()
            finally:
                fcntl.flock(fh, fcntl.LOCK_UN)
        self._latest[rec.key] = rec
        return rec

    def records(self) -> list[RunRecord]:
        return list(self._latest.values())
