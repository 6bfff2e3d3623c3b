"""Verification records shared by every check and the CLI."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Optional

from . import __version__

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"
SCHEMA_VERSION = 1


@dataclass
class Check:
    """Outcome of one exhaustive identity check.

    ``witness`` is present exactly when the check failed; ``detail`` carries
    extra non-failure facts (dimensions, scalars) worth reporting.
    """

    name: str
    status: str = PASS
    tuple_count: int = 0
    witness: Optional[dict] = None
    detail: Optional[dict] = None

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def __bool__(self):
        return self.status != FAIL

    def fail(self, witness: dict) -> "Check":
        self.status = FAIL
        self.witness = witness
        return self

    def to_dict(self) -> dict:
        d: dict[str, Any] = {"name": self.name, "status": self.status, "tuple_count": self.tuple_count}
        if self.witness is not None:
            d["witness"] = self.witness
        if self.detail:
            d["detail"] = self.detail
        return d


def skipped(name: str, reason: str) -> Check:
    return Check(name, SKIPPED, 0, None, {"reason": reason})


@dataclass
class VerificationReport:
    suite: str
    group: str
    character: Optional[int] = None
    window: Optional[int] = None
    checks: list[Check] = field(default_factory=list)
    engine_version: str = __version__

    @property
    def passed(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def extend(self, checks) -> None:
        self.checks.extend(checks)

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "suite": self.suite,
            "group": self.group,
            "character": self.character,
            "window": self.window,
            "passed": self.passed,
            "engine_version": self.engine_version,
            "checks": [c.to_dict() for c in self.checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)

    def to_markdown(self) -> str:
        lines = [
            f"## {self.suite} on {self.group}"
            + (f", character {self.character}" if self.character is not None else "")
            + (f", window {self.window}" if self.window is not None else ""),
            "",
            "| check | status | tuples | note |",
            "|---|---|---|---|",
        ]
        for c in self.checks:
            note = ""
            if c.witness is not None:
                note = json.dumps(c.witness)
            elif c.detail:
                note = json.dumps(c.detail)
            lines.append(f"| {c.name} | {c.status} | {c.tuple_count} | {note} |")
        lines.append("")
        lines.append(f"**{'PASS' if self.passed else 'FAIL'}** (engine {self.engine_version})")
        return "\n".join(lines) + "\n"
