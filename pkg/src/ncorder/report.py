"""Result records shared by the checkers and the CLI."""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any

from .scalars import scalar_str


@dataclass
class Failure:
    t_order: int
    word: str
    lhs: Any
    rhs: Any
    channel: str = ""
    detail: str = ""

    def to_dict(self) -> dict:
        return {"t_order": self.t_order, "word": self.word, "lhs": scalar_str(self.lhs), "rhs": scalar_str(self.rhs)}

    def __str__(self) -> str:
        where = f"[{self.channel}] " if self.channel else ""
        extra = f" ({self.detail})" if self.detail else ""
        return f"{where}t^{self.t_order}, word {self.word}: lhs {scalar_str(self.lhs)} != rhs {scalar_str(self.rhs)}{extra}"


@dataclass
class Report:
    name: str
    passed: bool = True
    order: int = 0
    first_failure: Failure | None = None
    elapsed_ms: int = 0
    relation: str = ""
    params: dict = field(default_factory=dict)
    seed: int = 0
    notes: list[str] = field(default_factory=list)
    expected_failure: bool = False

    def fail(self, failure: Failure) -> None:
        if self.first_failure is None:
            self.first_failure = failure
        self.passed = False

    def to_dict(self) -> dict:
        return {
            "check": self.name,
            "relation": self.relation,
            "params": {k: scalar_str(v) for k, v in self.params.items()},
            "order": self.order,
            "pass": self.passed,
            "first_failure": self.first_failure.to_dict() if self.first_failure else None,
            "elapsed_ms": self.elapsed_ms,
            "seed": self.seed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        params = ", ".join(f"{k}={scalar_str(v)}" for k, v in self.params.items())
        line = f"{status} {self.name}"
        if params:
            line += f" [{params}]"
        line += f" order={self.order} ({self.elapsed_ms} ms)"
        if self.expected_failure:
            line += " expected failure observed"
        if self.first_failure is not None:
            line += f"\n    first failure: {self.first_failure}"
        return line


@contextmanager
def timed(report: Report):
    start = time.perf_counter()
    try:
        yield report
    finally:
        report.elapsed_ms = int((time.perf_counter() - start) * 1000)
