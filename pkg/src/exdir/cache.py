"""Append-only JSON-lines store of solve results."""

from __future__ import annotations

import hashlib
import json
import os
import time
from dataclasses import asdict, dataclass
from datetime import datetime, timezone

from .graph import Graph, emit_graph

CACHE_ENV = "EXDIR_CACHE"


@dataclass(frozen=True)
class ResultRecord:
    graph_hash: str
    family_spec: str | None
    start: int
    f_d: int
    closed_min: int
    timestamp: str

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, line: str) -> ResultRecord:
        return cls(**json.loads(line))

    def same_result(self, other: ResultRecord) -> bool:
        a, b = asdict(self), asdict(other)
        a.pop("timestamp")
        b.pop("timestamp")
        return a == b


def graph_hash(g: Graph) -> str:
    return hashlib.sha256(emit_graph(g).encode()).hexdigest()


def now_stamp() -> str:
    # SOURCE_DATE_EPOCH pins the stamp for reproducible output
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    t = float(epoch) if epoch is not None else time.time()
    return datetime.fromtimestamp(t, tz=timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def lookup(path: str, ghash: str, start: int) -> ResultRecord | None:
    if not os.path.exists(path):
        return None
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            rec = ResultRecord.from_json(line)
            if rec.graph_hash == ghash and rec.start == start:
                return rec
    return None


def append(path: str, record: ResultRecord) -> None:
    with open(path, "a") as fh:
        fh.write(record.to_json() + "\n")
