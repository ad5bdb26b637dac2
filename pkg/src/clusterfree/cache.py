"""Append-only JSON-lines store of solved search problems.

One record per line; the latest record for a (problem, params) key wins.
Unreadable lines are skipped with a warning.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import time
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Optional

from . import __version__
from .family import SetFamily
from .multigraph import Multigraph
from .search import SearchResult

log = logging.getLogger(__name__)

CACHE_ENV = "CLUSTERFREE_CACHE"
CACHE_FILE = "results.jsonl"


def witness_text(witness: SetFamily | Multigraph | None) -> Optional[str]:
    return None if witness is None else witness.to_text()


def digest(text: Optional[str]) -> Optional[str]:
    if text is None:
        return None
    return hashlib.sha256(text.encode()).hexdigest()


def params_key(problem: str, params: dict) -> str:
    return problem + ":" + ",".join(f"{k}={params[k]}" for k in sorted(params))


@dataclass
class CacheRecord:
    problem: str
    params: dict
    value: Optional[int]
    status: str
    witness_digest: Optional[str]
    witness: Optional[str]
    tool_version: str
    timestamp: float

    @property
    def key(self) -> str:
        return params_key(self.problem, self.params)

    @classmethod
    def from_result(cls, res: SearchResult) -> "CacheRecord":
        text = witness_text(res.witness)
        return cls(res.problem, dict(res.params), res.value, res.status.value, digest(text), text,
                   __version__, time.time())


class ResultCache:
    def __init__(self, directory: str | Path):
        self.dir = Path(directory)
        self.path = self.dir / CACHE_FILE
        self._records: dict[str, CacheRecord] = {}
        self._load()

    @classmethod
    def from_env(cls, directory: Optional[str] = None) -> Optional["ResultCache"]:
        directory = directory or os.environ.get(CACHE_ENV)
        return cls(directory) if directory else None

    def _load(self) -> None:
        if not self.path.exists():
            return
        with self.path.open() as fh:
            for lineno, line in enumerate(fh, 1):
                if not line.strip():
                    continue
                try:
                    rec = CacheRecord(**json.loads(line))
                except (json.JSONDecodeError, TypeError) as exc:
                    log.warning("skipping corrupt cache line %d of %s: %s", lineno, self.path, exc)
                    continue
                self._records[rec.key] = rec

    def get(self, problem: str, params: dict) -> Optional[CacheRecord]:
        return self._records.get(params_key(problem, params))

    def put(self, record: CacheRecord) -> None:
        self.dir.mkdir(parents=True, exist_ok=True)
        line = json.dumps(asdict(record), sort_keys=True) + "\n"
        # one write call per record keeps appends whole-line
        with self.path.open("a") as fh:
            fh.write(line)
        self._records[record.key] = record

    def __len__(self) -> int:
        return len(self._records)
