"""Extremal records and their append-only JSON-lines store."""

from __future__ import annotations

import json
import logging
import math
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Iterable

log = logging.getLogger(__name__)

METHODS = ("exhaustive", "construction-pool", "local-search")


@dataclass(frozen=True)
class ExtremalRecord:
    m: int
    forbidden: str
    rank: int
    graph6: str
    rho: float
    method: str
    margin: float  # gap to the next rank; inf when nothing follows
    indistinguishable: bool = False
    verdict: str = ""

    @property
    def key(self) -> tuple[int, str, int, str]:
        return (self.m, self.forbidden, self.rank, self.method)

    def to_json(self) -> str:
        d = asdict(self)
        if math.isinf(self.margin):
            d["margin"] = None
        return json.dumps(d, sort_keys=True, ensure_ascii=False)

    @classmethod
    def from_json(cls, line: str) -> ExtremalRecord:
        d = json.loads(line)
        names = {f.name for f in fields(cls)}
        missing = {"m", "forbidden", "rank", "graph6", "rho", "method"} - d.keys()
        if missing:
            raise ValueError(f"record missing fields {sorted(missing)}")
        d = {k: v for k, v in d.items() if k in names}
        if d.get("margin") is None:
            d["margin"] = math.inf
        rec = cls(**d)
        if not isinstance(rec.m, int) or not isinstance(rec.rank, int):
            raise ValueError("m and rank must be integers")
        return rec


def append_records(path: str | Path, records: Iterable[ExtremalRecord]) -> int:
    """Append records; later lines win over earlier ones with the same key."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    count = 0
    with path.open("a", encoding="utf-8") as fh:
        for rec in records:
            fh.write(rec.to_json() + "\n")
            count += 1
    return count


def load_records(path: str | Path) -> list[ExtremalRecord]:
    """Latest record per (m, forbidden, rank, method); bad lines are skipped."""
    path = Path(path)
    if not path.exists():
        return []
    latest: dict[tuple, ExtremalRecord] = {}
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                rec = ExtremalRecord.from_json(line)
            except (ValueError, TypeError) as exc:
                log.warning("%s:%d: skipping corrupt record (%s)", path, lineno, exc)
                continue
            latest.pop(rec.key, None)
            latest[rec.key] = rec
    return list(latest.values())


def query_records(
    path: str | Path,
    m_min: int | None = None,
    m_max: int | None = None,
    method: str | None = None,
    verdict: str | None = None,
    rank: int | None = None,
    forbidden: str | None = None,
) -> list[ExtremalRecord]:
    out = []
    for rec in load_records(path):
        if m_min is not None and rec.m < m_min:
            continue
        if m_max is not None and rec.m > m_max:
            continue
        if method is not None and rec.method != method:
            continue
        if verdict is not None and rec.verdict != verdict:
            continue
        if rank is not None and rec.rank != rank:
            continue
        if forbidden is not None and rec.forbidden != forbidden:
            continue
        out.append(rec)
    out.sort(key=lambda r: (r.m, r.forbidden, r.method, r.rank))
    return out
