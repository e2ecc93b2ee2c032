"""
CoL Toolkit - Verdicts and Search Budgets
=========================================
Result types shared by the decision procedures and the proof checkers.
"""
from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Generic, Optional, TypeVar, Union

from src.logic.errors import ResourceExhausted

P = TypeVar("P")


@dataclass
class SearchStats:
    nodes: int = 0
    memo_hits: int = 0
    pruned_duplicates: int = 0
    elapsed_ms: float = 0.0

    def as_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class Provable(Generic[P]):
    proof: P
    stats: SearchStats = field(default_factory=SearchStats, compare=False)
    status = "provable"


@dataclass(frozen=True)
class Unprovable:
    bounds: Dict[str, Any] = field(default_factory=dict)
    stats: SearchStats = field(default_factory=SearchStats, compare=False)
    status = "unprovable"


@dataclass(frozen=True)
class Exhausted:
    reason: str
    bounds: Dict[str, Any] = field(default_factory=dict)
    stats: SearchStats = field(default_factory=SearchStats, compare=False)
    status = "resource-exhausted"


Verdict = Union[Provable, Unprovable, Exhausted]


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a proof check; names the first failing step and clause."""

    ok: bool
    step: Optional[int] = None
    clause: Optional[str] = None

    def __bool__(self) -> bool:
        return self.ok

    @classmethod
    def accept(cls) -> "CheckResult":
        return cls(True)

    @classmethod
    def reject(cls, step: Optional[int], clause: str) -> "CheckResult":
        return cls(False, step, clause)

    def describe(self) -> str:
        if self.ok:
            return "accepted"
        where = f"step {self.step}" if self.step is not None else "proof"
        return f"rejected at {where}: {self.clause}"


class SearchBudget:
    """Node counter plus optional wall-clock deadline"""

    def __init__(self, max_nodes: Optional[int] = None, timeout_ms: Optional[int] = None):
        self.max_nodes = max_nodes
        self.timeout_ms = timeout_ms
        self.stats = SearchStats()
        self._started = time.monotonic()
        self._deadline = self._started + timeout_ms / 1000.0 if timeout_ms else None

    def tick(self) -> None:
        self.stats.nodes += 1
        if self.max_nodes is not None and self.stats.nodes > self.max_nodes:
            raise ResourceExhausted(f"node budget {self.max_nodes} exceeded", self.stats.as_dict())
        # checking the clock on every node is measurably slow
        if self._deadline is not None and self.stats.nodes % 256 == 0 and time.monotonic() > self._deadline:
            raise ResourceExhausted(f"timeout of {self.timeout_ms} ms exceeded", self.stats.as_dict())

    def finish(self) -> SearchStats:
        self.stats.elapsed_ms = round((time.monotonic() - self._started) * 1000.0, 3)
        return self.stats
