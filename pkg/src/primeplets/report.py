"""Serialization of result records and the per-run manifest.

Records are anything with a ``to_record()`` method returning a dict, or
plain dicts.  Key order is whatever ``to_record`` produces; every record
type fixes its own order, so output is stable across runs.
"""

from __future__ import annotations

import csv
import enum
import hashlib
import io
import json
import sys
import time
from dataclasses import dataclass, field
from typing import Any, Iterable, TextIO

from . import __version__
from .errors import SerializationError

SAFE_INT = 2**53


class Format(str, enum.Enum):
    JSON = "json-lines"
    CSV = "csv"
    TABLE = "table"


def _plain(value: Any) -> Any:
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return str(value) if abs(value) > SAFE_INT else value
    if isinstance(value, enum.Enum):
        return value.value
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    if isinstance(value, str):
        return value
    raise SerializationError(f"cannot serialize {type(value).__name__}")


def _as_dicts(records: Iterable[Any]) -> list[dict]:
    records = list(records)
    if not records:
        return []
    kinds = {type(r) for r in records}
    if len(kinds) > 1:
        names = sorted(k.__name__ for k in kinds)
        raise SerializationError(f"mixed record types: {', '.join(names)}")
    out = []
    for r in records:
        d = r if isinstance(r, dict) else getattr(r, "to_record", None)
        if d is None:
            raise SerializationError(f"{type(r).__name__} has no to_record()")
        out.append(_plain(d if isinstance(d, dict) else d()))
    keys = {tuple(d) for d in out}
    if len(keys) > 1:
        raise SerializationError("records do not share one schema")
    return out


def _cell(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, list):
        return " ".join(_cell(x) for x in v)
    if isinstance(v, dict):
        return json.dumps(v, separators=(",", ":"))
    return str(v)


def emit(records: Iterable[Any], fmt: Format | str = Format.JSON) -> bytes:
    """Render homogeneous records; an empty input gives an empty stream."""
    fmt = Format(fmt)
    rows = _as_dicts(records)
    if not rows:
        return b""
    if fmt is Format.JSON:
        text = "".join(
            json.dumps(r, separators=(",", ":"), ensure_ascii=False) + "\n" for r in rows
        )
        return text.encode("utf-8")
    header = list(rows[0])
    cells = [[_cell(r[k]) for k in header] for r in rows]
    if fmt is Format.CSV:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(cells)
        return buf.getvalue().encode("utf-8")
    widths = [max(len(h), *(len(c[i]) for c in cells)) for i, h in enumerate(header)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    for c in cells:
        lines.append("  ".join(x.ljust(w) for x, w in zip(c, widths)).rstrip())
    return ("\n".join(lines) + "\n").encode("utf-8")


def config_hash(command: str, config: dict) -> str:
    blob = json.dumps({"command": command, "config": _plain(config)}, sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()


@dataclass
class RunManifest:
    command: str
    config: dict = field(default_factory=dict)
    tool_version: str = __version__
    started: float = field(default_factory=time.time)
    finished: float | None = None
    result_count: int = 0
    probable_prime_used: bool = False

    @property
    def config_hash(self) -> str:
        return config_hash(self.command, self.config)

    def finish(self, result_count: int, probable_prime_used: bool = False) -> "RunManifest":
        self.finished = time.time()
        self.result_count = result_count
        self.probable_prime_used = probable_prime_used
        return self

    def to_record(self) -> dict:
        stamp = lambda t: None if t is None else time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime(t))
        return {
            "command": self.command,
            "config_hash": self.config_hash,
            "tool_version": self.tool_version,
            "started": stamp(self.started),
            "finished": stamp(self.finished),
            "result_count": self.result_count,
            "probable_prime_used": self.probable_prime_used,
        }

    def write(self, stream: TextIO | None = None) -> None:
        stream = stream or sys.stderr
        stream.write(json.dumps(self.to_record(), separators=(",", ":")) + "\n")
