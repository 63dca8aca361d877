"""Check results and the JSON report format."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterable

from recolle.repcat.category import Morphism, Undecided

SCHEMA_VERSION = 1

PASS, FAIL, UNDECIDED = "pass", "fail", "undecided"


@dataclass
class Check:
    id: str
    status: str
    count: int = 0
    detail: str = ""
    witness: Any = None
    dims: Any = None

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_json(self) -> dict:
        out: dict[str, Any] = {"id": self.id, "status": self.status, "count": self.count}
        if self.detail:
            out["detail"] = self.detail
        if self.witness is not None:
            out["witness"] = self.witness
        if self.dims is not None:
            out["dims"] = self.dims
        return out


@dataclass
class Tally:
    """Accumulates one check over many inputs, keeping the first witness."""

    id: str
    detail: str = ""
    count: int = 0
    failures: int = 0
    undecided: int = 0
    witness: Any = None
    dims: Any = None

    def ok(self) -> None:
        self.count += 1

    def record(self, passed: bool, witness: Any = None) -> bool:
        if passed:
            self.ok()
        else:
            self.fail(witness)
        return passed

    def fail(self, witness: Any = None) -> None:
        """Record a failure; a callable witness is only evaluated for the first one."""
        self.count += 1
        self.failures += 1
        if self.witness is None:
            self.witness = witness() if callable(witness) else witness

    def unsure(self, witness: Any = None) -> None:
        self.count += 1
        self.undecided += 1
        if self.witness is None and not self.failures:
            self.witness = witness() if callable(witness) else witness

    def result(self) -> Check:
        if self.failures:
            status = FAIL
        elif self.undecided:
            status = UNDECIDED
        else:
            status = PASS
        return Check(self.id, status, self.count, self.detail, self.witness, self.dims)


def single(id: str, passed: bool, detail: str = "", witness: Any = None, dims: Any = None) -> Check:
    return Check(id, PASS if passed else FAIL, 1, detail, witness, dims)


def witness_of(cat, *items) -> list:
    """JSON form of objects and morphisms for a witness field."""
    out = []
    for x in items:
        if isinstance(x, Morphism):
            out.append({"source": cat.to_json(x.source), "target": cat.to_json(x.target),
                        "components": [c.to_json() for c in x.comps]})
        else:
            out.append(cat.to_json(x))
    return out


def guarded(tally: Tally, fn, *args, witness: Any = None) -> None:
    """Run a boolean check, turning Undecided into an undecided tally entry."""
    try:
        tally.record(bool(fn(*args)), witness)
    except Undecided:
        tally.unsure(witness)


@dataclass
class Report:
    suite: str
    checks: list[Check] = field(default_factory=list)
    seed: int = 0
    budget: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    """Extra lines for the text form only."""

    def extend(self, checks: Iterable[Check]) -> None:
        self.checks.extend(checks)

    @property
    def status(self) -> str:
        statuses = {c.status for c in self.checks}
        if FAIL in statuses:
            return FAIL
        if UNDECIDED in statuses:
            return UNDECIDED
        return PASS

    def exit_code(self) -> int:
        return {PASS: 0, FAIL: 1, UNDECIDED: 3}[self.status]

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "suite": self.suite,
            "status": self.status,
            "checks": [c.to_json() for c in sorted(self.checks, key=lambda c: c.id)],
            "seed": self.seed,
            "budget": self.budget,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"

    def to_text(self) -> str:
        lines = [f"suite {self.suite} (seed {self.seed})"]
        width = max((len(c.id) for c in self.checks), default=0)
        for c in sorted(self.checks, key=lambda c: c.id):
            extra = f"  {c.detail}" if c.detail else ""
            lines.append(f"{c.id.ljust(width)}  {c.status:<9} [{c.count} cases]{extra}")
        lines += self.notes
        lines.append(f"overall: {self.status}")
        return "\n".join(lines) + "\n"
