"""Check results and the JSON report format."""
from __future__ import annotations

import json
from dataclasses import dataclass, field as _field
from typing import Any

SCHEMA_VERSION = 1
TOOL_VERSION = "0.1.0"

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


@dataclass
class CheckResult:
    name: str
    status: str
    counts: dict[str, int] = _field(default_factory=dict)
    witness: Any = None

    @property
    def ok(self) -> bool:
        return self.status != FAIL

    def to_json(self) -> dict:
        return {"name": self.name, "status": self.status,
                "counts": {k: int(v) for k, v in self.counts.items()},
                "witness": _plain(self.witness)}


def check(name: str, ok: bool, counts: dict | None = None, witness=None) -> CheckResult:
    return CheckResult(name, PASS if ok else FAIL, dict(counts or {}), None if ok else witness)


def skipped(name: str, reason: str, counts: dict | None = None) -> CheckResult:
    return CheckResult(name, SKIPPED, dict(counts or {}), {"reason": reason})


def _plain(x):
    """numpy scalars/arrays and tuples to plain JSON values."""
    if x is None or isinstance(x, (str, bool)):
        return x
    if hasattr(x, "tolist"):
        return x.tolist()
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (int, float)):
        return x
    return str(x)


@dataclass
class Report:
    command: str
    params: dict | None = None
    field: dict | None = None
    checks: list[CheckResult] = _field(default_factory=list)
    extra: dict = _field(default_factory=dict)
    elapsed_ms: int | None = None

    def extend(self, results) -> None:
        self.checks.extend(results)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def summary(self) -> dict[str, int]:
        out = {"pass": 0, "fail": 0, "skipped": 0}
        for c in self.checks:
            out[c.status] += 1
        return out

    def to_json(self) -> dict:
        doc = {
            "schema_version": SCHEMA_VERSION,
            "tool_version": TOOL_VERSION,
            "command": self.command,
            "params": _plain(self.params),
            "field": _plain(self.field),
            "checks": [c.to_json() for c in self.checks],
            "summary": self.summary(),
            "elapsed_ms": self.elapsed_ms,
        }
        for k, v in self.extra.items():
            doc[k] = _plain(v)
        return doc

    def dumps(self, pretty: bool = False) -> str:
        if pretty:
            return json.dumps(self.to_json(), sort_keys=True, indent=2) + "\n"
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":")) + "\n"
