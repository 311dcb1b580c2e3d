"""Check reports shared by every law checker."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterable

PASS = "pass"


@dataclass(frozen=True)
class Skip:
    reason: str


@dataclass
class CheckReport:
    law: str
    instancesTried: int = 0
    passed: int = 0
    skipped: int = 0
    witnesses: list = field(default_factory=list)
    wallTime: float = 0.0
    skipReasons: dict = field(default_factory=dict)
    status: str = ""
    note: str = ""

    @property
    def failed(self) -> int:
        return len(self.witnesses)

    def consistent(self) -> bool:
        return self.passed + len(self.witnesses) + self.skipped == self.instancesTried

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "law": self.law,
            "status": self.status,
            "instancesTried": self.instancesTried,
            "passed": self.passed,
            "skipped": self.skipped,
            "skipReasons": dict(sorted(self.skipReasons.items())),
            "witnesses": self.witnesses,
        }
        if self.note:
            out["note"] = self.note
        if timing:
            out["wallTime"] = round(self.wallTime, 3)
        return out


def collect(law: str, outcomes: Iterable) -> CheckReport:
    """Tally outcomes: ``PASS``, a ``Skip`` or a witness dict."""
    rep = CheckReport(law)
    t0 = time.perf_counter()
    for o in outcomes:
        rep.instancesTried += 1
        if o == PASS:
            rep.passed += 1
        elif isinstance(o, Skip):
            rep.skipped += 1
            rep.skipReasons[o.reason] = rep.skipReasons.get(o.reason, 0) + 1
        else:
            rep.witnesses.append(o)
    rep.wallTime = time.perf_counter() - t0
    return rep
