"""
CoL Toolkit - Structural Closure
================================
Decides whether a CL15 cirquent follows from an Axiom by Exchange,
Duplication, Merging and Weakening alone, and writes that derivation out.

Read top-down, those rules never break an Axiom diamond: every undergroup
keeps the pair it started from, and an overgroup only ever gains both
halves of a diamond at once (Merging) or oformulas that Weakening inserted.
So the cirquent is structurally derivable iff there are disjoint pairs
(~G, G) of oformulas such that

- every undergroup contains some pair, and
- every overgroup contains both halves of a pair or neither.

The derivation starts from the Axiom on the pairs that undergroups rely on,
duplicates and merges their groups into shape, inserts the remaining
oformulas by Weakening, adds the missing arcs and finally exchanges
everything into place.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from src.cirquents.cl15.cirquent import Cirquent15, axiom
from src.cirquents.cl15.rules import CL15Rule, apply_forward, rule
from src.logic.errors import RuleApplicationError
from src.logic.formula import Neg
from src.logic.normalizer import normalize
from src.logic.verdicts import SearchBudget

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]
Derivation = List[Tuple[Cirquent15, Optional[CL15Rule]]]


@dataclass(frozen=True)
class ClosureWitness:
    pairs: Tuple[Pair, ...]
    # undergroup index -> index into pairs
    assignment: Tuple[int, ...]


def _candidate_pairs(c: Cirquent15) -> List[Pair]:
    out = []
    n = len(c.oformulas)
    for a in range(n):
        for b in range(a + 1, n):
            if c.oformulas[a] != normalize(Neg(c.oformulas[b])):
                continue
            if all((a in g) == (b in g) for g in c.overgroups):
                out.append((a, b))
    return out


def find_closure(c: Cirquent15, budget: Optional[SearchBudget] = None) -> Optional[ClosureWitness]:
    candidates = _candidate_pairs(c)
    if not candidates:
        return None
    inside = [[p for p in candidates if p[0] in g and p[1] in g] for g in c.undergroups]
    if not all(inside):
        return None

    def cover(k: int, chosen: List[Pair], used: frozenset) -> Optional[List[Pair]]:
        if budget is not None:
            budget.tick()
        if k == len(c.undergroups):
            return chosen
        group = c.undergroups[k]
        if any(a in group and b in group for a, b in chosen):
            return cover(k + 1, chosen, used)
        for a, b in inside[k]:
            if a in used or b in used:
                continue
            found = cover(k + 1, chosen + [(a, b)], used | {a, b})
            if found is not None:
                return found
        return None

    chosen = cover(0, [], frozenset())
    if chosen is None:
        return None
    assignment = tuple(
        next(k for k, (a, b) in enumerate(chosen) if a in g and b in g) for g in c.undergroups
    )
    return ClosureWitness(tuple(chosen), assignment)


class _Tracker:
    """Current cirquent plus, for each of its objects, the target object it will become"""

    def __init__(self, start: Cirquent15, oformulas: List[int], undergroups: List[int], overgroups: List[int]):
        self.steps: Derivation = [(start, None)]
        self.oformulas = oformulas
        self.undergroups = undergroups
        self.overgroups = overgroups

    @property
    def current(self) -> Cirquent15:
        return self.steps[-1][0]

    def apply(self, r: CL15Rule) -> None:
        self.steps.append((apply_forward(self.current, r), r))

    def exchange(self, tag: str, i: int) -> None:
        # swapping two identical groups would be a step that changes nothing
        if tag != "E-oformula":
            groups = self.current.undergroups if tag == "E-under" else self.current.overgroups
            if groups[i] == groups[i + 1]:
                return
        self.apply(rule(tag, index=i))

    def sort(self, labels: List[int], tag: str) -> None:
        swapped = True
        while swapped:
            swapped = False
            for i in range(len(labels) - 1):
                if labels[i] > labels[i + 1]:
                    self.exchange(tag, i)
                    labels[i], labels[i + 1] = labels[i + 1], labels[i]
                    swapped = True


def expand_closure(c: Cirquent15, witness: ClosureWitness) -> Derivation:
    """Top-down derivation from an Axiom to c; the first entry has no rule."""
    used = sorted(set(witness.assignment))
    pairs = [witness.pairs[k] for k in used]
    start = axiom([c.oformulas[b] for _, b in pairs])
    served: Dict[int, List[int]] = {k: [] for k in range(len(pairs))}
    for u, k in enumerate(witness.assignment):
        served[used.index(k)].append(u)
    holding: Dict[int, List[int]] = {
        k: [o for o, g in enumerate(c.overgroups) if a in g] for k, (a, _) in enumerate(pairs)
    }

    tracker = _Tracker(start, [x for pair in pairs for x in pair], [], [])
    # later diamonds first so earlier group indices stay put
    for k in reversed(range(len(pairs))):
        for _ in served[k][1:]:
            tracker.apply(rule("D-under", index=k))
        for _ in holding[k][1:]:
            tracker.apply(rule("D-over", index=k))
    for k in range(len(pairs)):
        tracker.undergroups += served[k]
        tracker.overgroups += holding[k]

    labels = tracker.overgroups
    while len(set(labels)) < len(labels):
        first: Dict[int, int] = {}
        for q, label in enumerate(labels):
            if label in first:
                p = first[label]
                break
            first[label] = q
        while q > p + 1:
            tracker.exchange("E-over", q - 1)
            labels[q - 1], labels[q] = labels[q], labels[q - 1]
            q -= 1
        tracker.apply(rule("M", index=p))
        del labels[p + 1]

    paired = {x for pair in pairs for x in pair}
    for t in range(len(c.oformulas)):
        if t in paired:
            continue
        home = min(c.undergroups_of(t))
        joined, fresh = [], []
        for o in c.overgroups_of(t):
            if o not in tracker.overgroups:
                fresh.append(len(tracker.overgroups))
                tracker.overgroups.append(o)
            joined.append(tracker.overgroups.index(o))
        tracker.apply(
            rule(
                "W",
                undergroup=tracker.undergroups.index(home),
                oformula=len(tracker.oformulas),
                formula=c.oformulas[t],
                overgroups=joined,
                new_overgroups=fresh,
            )
        )
        tracker.oformulas.append(t)

    for u, group in enumerate(c.undergroups):
        index = tracker.undergroups.index(u)
        for member in sorted(group):
            position = tracker.oformulas.index(member)
            if position not in tracker.current.undergroups[index]:
                tracker.apply(rule("W", undergroup=index, oformula=position))

    tracker.sort(tracker.oformulas, "E-oformula")
    tracker.sort(tracker.undergroups, "E-under")
    tracker.sort(tracker.overgroups, "E-over")
    if tracker.current != c:
        raise RuleApplicationError("A", f"structural derivation ended at {tracker.current}, not {c}")
    logger.debug("structural closure in %d steps from a %d-diamond axiom", len(tracker.steps), len(pairs))
    return tracker.steps


def structural_derivation(c: Cirquent15, budget: Optional[SearchBudget] = None) -> Optional[Derivation]:
    witness = find_closure(c, budget)
    return expand_closure(c, witness) if witness is not None else None


def closure_pairs(c: Cirquent15) -> Sequence[Pair]:
    witness = find_closure(c)
    return witness.pairs if witness is not None else ()
