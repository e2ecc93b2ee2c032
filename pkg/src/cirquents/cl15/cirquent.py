"""
CoL Toolkit - CL15 Cirquents
============================
A CL15 cirquent is a sequence of oformulas with two sequences of groups
over them: undergroups (drawn above the oformulas) and overgroups (drawn
below). Every oformula sits in at least one undergroup and at least one
overgroup, no group is empty, and none of the three sequences is empty.

The target of a proof of F is (<F>, <{0}>, <{0}>). An Axiom conclusion is an
array of diamonds <~F1, F1, ..., ~Fn, Fn> whose undergroups and overgroups
are both <{0,1}, {2,3}, ...>.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, Optional, Sequence, Tuple

from src.logic.errors import CoLError, SchemaError
from src.logic.formula import Formula, Neg, SystemId, check_language
from src.logic.normalizer import normalize, recurrence_complexity
from src.logic.parsers.formula_parser import parse, render

Groups = Tuple[FrozenSet[int], ...]


def _freeze(groups) -> Groups:
    return tuple(frozenset(g) for g in groups)


@dataclass(frozen=True)
class Cirquent15:
    oformulas: Tuple[Formula, ...]
    undergroups: Groups
    overgroups: Groups

    def __post_init__(self):
        object.__setattr__(self, "oformulas", tuple(self.oformulas))
        object.__setattr__(self, "undergroups", _freeze(self.undergroups))
        object.__setattr__(self, "overgroups", _freeze(self.overgroups))
        problem = self.violation()
        if problem is not None:
            raise ValueError(problem)

    def violation(self) -> Optional[str]:
        n = len(self.oformulas)
        if not n or not self.undergroups or not self.overgroups:
            return "oformulas, undergroups and overgroups must all be nonempty"
        for kind, groups in (("undergroup", self.undergroups), ("overgroup", self.overgroups)):
            for k, group in enumerate(groups):
                if not group:
                    return f"{kind} {k} is empty"
                if any(not 0 <= i < n for i in group):
                    return f"{kind} {k} refers outside the oformulas"
            covered = frozenset().union(*groups)
            missing = sorted(set(range(n)) - covered)
            if missing:
                return f"oformula {missing[0]} is in no {kind}"
        return None

    def __len__(self) -> int:
        return len(self.oformulas)

    def undergroups_of(self, i: int) -> Tuple[int, ...]:
        return tuple(k for k, g in enumerate(self.undergroups) if i in g)

    def overgroups_of(self, i: int) -> Tuple[int, ...]:
        return tuple(k for k, g in enumerate(self.overgroups) if i in g)

    def same_membership(self, i: int, j: int) -> bool:
        """Whether oformulas i and j belong to exactly the same groups"""
        return all((i in g) == (j in g) for g in self.undergroups + self.overgroups)

    def __str__(self) -> str:
        def show(groups: Groups) -> str:
            return " ".join("{" + ",".join(str(i) for i in sorted(g)) + "}" for g in groups)

        pool = ", ".join(render(f) for f in self.oformulas)
        return f"<{pool}> U[{show(self.undergroups)}] O[{show(self.overgroups)}]"


def formula_to_target(f: Formula) -> Cirquent15:
    target = normalize(f)
    check_language(target, SystemId.CL15)
    return Cirquent15((target,), (frozenset({0}),), (frozenset({0}),))


def axiom(formulas: Sequence[Formula]) -> Cirquent15:
    """The Axiom conclusion for F1 ... Fn"""
    if not formulas:
        raise ValueError("the axiom needs at least one diamond")
    oformulas = []
    for f in formulas:
        oformulas += [normalize(Neg(f)), f]
    diamonds = tuple(frozenset({2 * k, 2 * k + 1}) for k in range(len(formulas)))
    return Cirquent15(tuple(oformulas), diamonds, diamonds)


def axiom_match(c: Cirquent15) -> bool:
    n = len(c.oformulas)
    if n % 2:
        return False
    diamonds = tuple(frozenset({2 * k, 2 * k + 1}) for k in range(n // 2))
    if c.undergroups != diamonds or c.overgroups != diamonds:
        return False
    return all(c.oformulas[2 * k] == normalize(Neg(c.oformulas[2 * k + 1])) for k in range(n // 2))


def complexity(c: Cirquent15) -> int:
    """Total recurrence complexity of the oformulas"""
    return sum(recurrence_complexity(f) for f in c.oformulas)


def cirquent_to_json(c: Cirquent15) -> Dict[str, Any]:
    return {
        "oformulas": [render(f) for f in c.oformulas],
        "undergroups": [sorted(g) for g in c.undergroups],
        "overgroups": [sorted(g) for g in c.overgroups],
    }


def cirquent_from_json(data: Any) -> Cirquent15:
    try:
        return Cirquent15(
            tuple(normalize(parse(text)) for text in data["oformulas"]),
            tuple(frozenset(int(i) for i in g) for g in data["undergroups"]),
            tuple(frozenset(int(i) for i in g) for g in data["overgroups"]),
        )
    except CoLError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"malformed CL15 cirquent: {exc}") from exc


def to_dot(c: Cirquent15, name: str = "cirquent") -> str:
    """Three-level diamond picture: undergroups on top, overgroups at the bottom."""
    lines = [f"graph {name} {{", "  node [fontname=\"Helvetica\"];"]
    lines.append("  { rank=min; " + " ".join(f"u{k};" for k in range(len(c.undergroups))) + " }")
    lines.append("  { rank=same; " + " ".join(f"f{i};" for i in range(len(c.oformulas))) + " }")
    lines.append("  { rank=max; " + " ".join(f"o{k};" for k in range(len(c.overgroups))) + " }")
    for k in range(len(c.undergroups)):
        lines.append(f"  u{k} [shape=point, width=0.12];")
    for i, f in enumerate(c.oformulas):
        lines.append(f"  f{i} [shape=plaintext, label={json.dumps(render(f, style='unicode'), ensure_ascii=False)}];")
    for k in range(len(c.overgroups)):
        lines.append(f"  o{k} [shape=point, width=0.12];")
    for k, group in enumerate(c.undergroups):
        for i in sorted(group):
            lines.append(f"  u{k} -- f{i};")
    for k, group in enumerate(c.overgroups):
        for i in sorted(group):
            lines.append(f"  f{i} -- o{k};")
    lines.append("}")
    return "\n".join(lines)
