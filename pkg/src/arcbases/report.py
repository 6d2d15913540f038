"""Verification reports: one per checked statement and N."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any, Literal

Status = Literal["pass", "fail", "reported"]

MAX_WITNESSES = 10


@dataclass
class Report:
    statement: str
    n: int | None
    status: Status
    counts: dict[str, int] = field(default_factory=dict)
    witnesses: list[str] = field(default_factory=list)
    detail: dict[str, Any] = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return self.status != "fail"

    def to_dict(self, timings: bool = False) -> dict[str, Any]:
        d: dict[str, Any] = {
            "statement": self.statement,
            "n": self.n,
            "status": self.status,
            "counts": dict(sorted(self.counts.items())),
            "witnesses": list(self.witnesses),
        }
        if self.detail:
            d["detail"] = self.detail
        if timings:
            d["wall_time"] = round(self.wall_time, 6)
        return d

    def line(self) -> str:
        counts = " ".join(f"{k}={v}" for k, v in sorted(self.counts.items()))
        head = f"[{self.status.upper():8}] {self.statement:<16} N={self.n}"
        out = f"{head}  {counts}".rstrip()
        for w in self.witnesses[:3]:
            out += f"\n           witness: {w}"
        return out


class Tally:
    """Accumulates pass/fail checks for one statement and builds its Report."""

    def __init__(self, statement: str, n: int | None) -> None:
        self.statement = statement
        self.n = n
        self.checked = 0
        self.failures = 0
        self.witnesses: list[str] = []
        self.counts: dict[str, int] = {}
        self.detail: dict[str, Any] = {}
        self._t0 = time.perf_counter()

    def check(self, ok: bool, witness: Any = "") -> bool:
        self.checked += 1
        if not ok:
            self.failures += 1
            if len(self.witnesses) < MAX_WITNESSES:
                self.witnesses.append(witness() if callable(witness) else str(witness))
        return ok

    def fail(self, witness: Any) -> None:
        self.check(False, witness)

    def report(self, status: Status | None = None) -> Report:
        if status is None:
            status = "fail" if self.failures else "pass"
        counts = {"checked": self.checked, "failures": self.failures, **self.counts}
        return Report(
            statement=self.statement,
            n=self.n,
            status=status,
            counts=counts,
            witnesses=self.witnesses,
            detail=self.detail,
            wall_time=time.perf_counter() - self._t0,
        )
