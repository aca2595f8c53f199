"""Certificate entries and the JSON report."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable

from .exact import ExactComplex, ExactMatrix, QuadScalar, format_scalar

PASS = "pass"
FAIL = "fail"
NUMERIC_PASS = "numeric-pass"
WARNING = "warning"
STATUSES = (PASS, FAIL, NUMERIC_PASS, WARNING)

SCHEMA_VERSION = "1"


def jsonable(x) -> Any:
    """Convert exact values to JSON-safe data (rationals become "p/q" strings)."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, (Fraction, QuadScalar)):
        return format_scalar(x)
    if isinstance(x, ExactComplex):
        return {"re": format_scalar(x.re), "im": format_scalar(x.im)}
    if isinstance(x, ExactMatrix):
        return [[jsonable(v) for v in r] for r in x.rows]
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return str(x)


@dataclass(frozen=True)
class Entry:
    name: str
    status: str
    witness: dict = field(default_factory=dict)
    indices: tuple = ()

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")

    @property
    def ok(self) -> bool:
        return self.status != FAIL

    def sort_key(self):
        return (self.name, tuple(str(i) for i in self.indices))

    def to_dict(self) -> dict:
        return {"name": self.name, "status": self.status,
                "indices": jsonable(list(self.indices)), "witness": jsonable(self.witness)}


def entry(name: str, ok: bool, witness: dict | None = None, indices: Iterable = (),
          numeric: bool = False) -> Entry:
    if ok:
        status = NUMERIC_PASS if numeric else PASS
    else:
        status = FAIL
    return Entry(name, status, witness or {}, tuple(indices))


class CertificateReport:
    """An ordered collection of entries; the verdict is pass iff nothing failed."""

    def __init__(self, entries: Iterable[Entry] = ()):
        self.entries: list[Entry] = list(entries)

    def add(self, e: Entry) -> None:
        self.entries.append(e)

    def extend(self, es: Iterable[Entry]) -> None:
        self.entries.extend(es)

    @property
    def passed(self) -> bool:
        return all(e.ok for e in self.entries)

    @property
    def verdict(self) -> str:
        return PASS if self.passed else FAIL

    def failures(self) -> list[Entry]:
        return [e for e in self.entries if not e.ok]

    def by_name(self, name: str) -> list[Entry]:
        return [e for e in self.entries if e.name == name]

    def sorted_entries(self) -> list[Entry]:
        return sorted(self.entries, key=Entry.sort_key)

    def to_dict(self, tool_version: str, input_digest: str) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "tool_version": tool_version,
            "input_digest": input_digest,
            "entries": [e.to_dict() for e in self.sorted_entries()],
            "verdict": self.verdict,
        }

    def to_json(self, tool_version: str, input_digest: str) -> str:
        return json.dumps(self.to_dict(tool_version, input_digest), sort_keys=True,
                          indent=2, ensure_ascii=False) + "\n"

    def summary(self) -> str:
        counts: dict[str, int] = {}
        for e in self.entries:
            counts[e.status] = counts.get(e.status, 0) + 1
        lines = [f"{len(self.entries)} checks: " + ", ".join(
            f"{counts[s]} {s}" for s in STATUSES if s in counts)]
        for e in self.sorted_entries():
            if not e.ok:
                lines.append(f"  FAIL {e.name} {list(e.indices)}: {jsonable(e.witness)}")
        lines.append(f"verdict: {self.verdict}")
        return "\n".join(lines)

    def __len__(self):
        return len(self.entries)
