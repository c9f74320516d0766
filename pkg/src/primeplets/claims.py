"""Replays the shipped claim table through the CLI, in-process.

Each claim names a command line, a projection of its records and an
expectation.  Comparison modes:

    equals    projected list == expected
    contains  every expected item occurs in the projection
    all       every projected item == expected (and there is at least one)
    count     number of records == expected

A claim carrying ``discrepancy`` is a printed statement known not to hold
as written; it is reported as Skipped with that note rather than run.
"""

from __future__ import annotations

import json
import shlex
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Any

from .errors import PrimepletError, ValidationError
from .report import _plain

MODES = ("equals", "contains", "all", "count")
STATUSES = ("Pass", "Fail", "Skipped")


@dataclass(frozen=True)
class ClaimRecord:
    claim_id: str
    anchor: str
    command: str
    expected: Any
    status: str
    observed: Any = None
    note: str = ""

    def to_record(self) -> dict:
        return {
            "claim_id": self.claim_id,
            "status": self.status,
            "command": self.command,
            "expected": self.expected,
            "observed": self.observed,
            "anchor": self.anchor,
            "note": self.note,
        }


@lru_cache(maxsize=1)
def load_table() -> tuple[dict, ...]:
    text = resources.files("primeplets").joinpath("data/claims.json").read_text("utf-8")
    table = json.loads(text)
    claims = tuple(table["claims"])
    ids = [c["claim_id"] for c in claims]
    if len(ids) != len(set(ids)):
        raise ValidationError("duplicate claim ids in table")
    for c in claims:
        if c.get("mode", "equals") not in MODES:
            raise ValidationError(f"{c['claim_id']}: unknown mode {c.get('mode')!r}")
        if not c.get("anchor"):
            raise ValidationError(f"{c['claim_id']}: missing anchor")
    return claims


def _project(rec: dict, select) -> Any:
    if isinstance(select, list):
        return [rec[k] for k in select]
    return rec[select]


def _matches(rec: dict, where: dict | None) -> bool:
    return not where or all(rec.get(k) == v for k, v in where.items())


def evaluate(claim: dict) -> ClaimRecord:
    from .cli import collect

    cid, cmd = claim["claim_id"], claim["command"]
    expected, mode = claim["expected"], claim.get("mode", "equals")
    base = dict(claim_id=cid, anchor=claim["anchor"], command=cmd, expected=expected)
    if claim.get("discrepancy"):
        return ClaimRecord(**base, status="Skipped", note=claim["discrepancy"])
    try:
        out = collect(shlex.split(cmd))
    except PrimepletError as exc:
        return ClaimRecord(**base, status="Fail", note=f"{type(exc).__name__}: {exc}")
    recs = [_plain(r if isinstance(r, dict) else r.to_record()) for r in out.records]
    recs = [r for r in recs if _matches(r, claim.get("where"))]
    if mode == "count":
        observed = len(recs)
        ok = observed == expected
    else:
        observed = [_project(r, claim["select"]) for r in recs]
        if mode == "equals":
            ok = observed == expected
        elif mode == "contains":
            ok = all(e in observed for e in expected)
        else:
            ok = bool(observed) and all(o == expected for o in observed)
    return ClaimRecord(**base, status="Pass" if ok else "Fail", observed=observed,
                       note=claim.get("note", ""))


def run_claims(prefix: str = "", claim_id: str | None = None) -> list[ClaimRecord]:
    """Evaluate claims whose id starts with ``prefix`` (or exactly ``claim_id``)."""
    table = load_table()
    if claim_id is not None:
        chosen = [c for c in table if c["claim_id"] == claim_id]
        if not chosen:
            raise ValidationError(f"unknown claim id {claim_id!r}")
    else:
        chosen = [c for c in table if c["claim_id"].startswith(prefix or "")]
    return [evaluate(c) for c in chosen]
