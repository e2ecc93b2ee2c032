"""
CoL Toolkit - CCC/CL5 Rules
===========================
Every rule of the shallow cirquent calculus as a deterministic top-down
transformation: given the premises and the rule parameters, `apply_rule`
builds the one conclusion the rule allows. A step is correct iff its
recorded conclusion equals that result.

CL5 is CCC without Contraction.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

from src.cirquents.cl5.cirquent import EMPTY, ShallowCirquent
from src.logic.errors import CoLError, RuleApplicationError
from src.logic.formula import Formula, Neg, Pand, Por, SystemId
from src.logic.normalizer import normalize
from src.logic.parsers.formula_parser import parse, render
from src.logic.verdicts import CheckResult

# rule name -> (premise count, parameter names in order)
RULES: Dict[str, Tuple[int, Tuple[str, ...]]] = {
    "axiom-empty": (0, ()),
    "axiom-identity": (0, ("formula",)),
    "mix": (2, ()),
    "exchange-oformula": (1, ("index",)),
    "exchange-ogroup": (1, ("index",)),
    "weaken-pool": (1, ("index", "formula")),
    "weaken-ogroup": (1, ("group", "oformula")),
    "duplicate-down": (1, ("group",)),
    "duplicate-up": (1, ("group",)),
    "contract": (1, ("index",)),
    "or-intro": (1, ("index",)),
    "and-intro": (1, ("index",)),
}

CCC_ONLY = frozenset({"contract"})


@dataclass(frozen=True)
class CL5Rule:
    name: str
    index: Optional[int] = None
    second: Optional[int] = None
    formula: Optional[Formula] = None

    def __post_init__(self):
        if self.name not in RULES:
            raise RuleApplicationError(self.name, "unknown rule")

    @property
    def arity(self) -> int:
        return RULES[self.name][0]

    def params(self) -> Dict[str, Any]:
        values = {"formula": render(self.formula) if self.formula is not None else None}
        names = RULES[self.name][1]
        positional = [n for n in names if n != "formula"]
        for name, value in zip(positional, (self.index, self.second)):
            values[name] = value
        return {name: values[name] for name in names}

    @classmethod
    def from_params(cls, name: str, params: Dict[str, Any]) -> "CL5Rule":
        if name not in RULES:
            raise RuleApplicationError(name, "unknown rule")
        positional = [n for n in RULES[name][1] if n != "formula"]
        numbers = [int(params[n]) for n in positional] + [None, None]
        formula = normalize(parse(params["formula"])) if "formula" in RULES[name][1] else None
        return cls(name, numbers[0], numbers[1], formula)

    def __str__(self) -> str:
        args = ", ".join(f"{k}={v}" for k, v in self.params().items())
        return f"{self.name}({args})"


# shorthand constructors

def axiom_empty() -> CL5Rule:
    return CL5Rule("axiom-empty")


def axiom_identity(f: Formula) -> CL5Rule:
    return CL5Rule("axiom-identity", formula=normalize(f))


def mix() -> CL5Rule:
    return CL5Rule("mix")


def exchange_oformula(i: int) -> CL5Rule:
    return CL5Rule("exchange-oformula", i)


def exchange_ogroup(i: int) -> CL5Rule:
    return CL5Rule("exchange-ogroup", i)


def weaken_pool(i: int, f: Formula) -> CL5Rule:
    return CL5Rule("weaken-pool", i, formula=normalize(f))


def weaken_ogroup(group: int, oformula: int) -> CL5Rule:
    return CL5Rule("weaken-ogroup", group, oformula)


def duplicate_down(group: int) -> CL5Rule:
    return CL5Rule("duplicate-down", group)


def duplicate_up(group: int) -> CL5Rule:
    return CL5Rule("duplicate-up", group)


def contract(i: int) -> CL5Rule:
    return CL5Rule("contract", i)


def or_intro(i: int) -> CL5Rule:
    return CL5Rule("or-intro", i)


def and_intro(i: int) -> CL5Rule:
    return CL5Rule("and-intro", i)


def _merge(c: ShallowCirquent, i: int, merged: Formula, groups=None) -> ShallowCirquent:
    """Replace pool positions i, i+1 by one oformula; arcs to either now point to it."""
    def image(j: int) -> int:
        if j <= i:
            return j
        return j - 1

    pool = c.pool[:i] + (merged,) + c.pool[i + 2:]
    source = c.groups if groups is None else groups
    return ShallowCirquent(pool, tuple(frozenset(image(j) for j in g) for g in source))


def _need(rule: CL5Rule, condition: bool, clause: str) -> None:
    if not condition:
        raise RuleApplicationError(rule.name, clause)


def apply_rule(rule: CL5Rule, premises: Sequence[ShallowCirquent], system: SystemId = SystemId.CCC) -> ShallowCirquent:
    """The conclusion of rule applied to premises; RuleApplicationError if it does not apply."""
    _need(rule, len(premises) == rule.arity, f"expects {rule.arity} premise(s), got {len(premises)}")
    if rule.name in CCC_ONLY and system is not SystemId.CCC:
        raise RuleApplicationError(rule.name, f"not a rule of {system.value}")
    name = rule.name

    if name == "axiom-empty":
        return EMPTY
    if name == "axiom-identity":
        _need(rule, rule.formula is not None, "identity axiom needs a formula")
        return ShallowCirquent((normalize(Neg(rule.formula)), rule.formula), (frozenset({0, 1}),))
    if name == "mix":
        left, right = premises
        shift = len(left.pool)
        groups = left.groups + tuple(frozenset(j + shift for j in g) for g in right.groups)
        return ShallowCirquent(left.pool + right.pool, groups)

    c = premises[0]
    i = rule.index
    if name == "exchange-oformula":
        _need(rule, i is not None and 0 <= i < len(c.pool) - 1, "no adjacent oformulas at this position")
        swap = {i: i + 1, i + 1: i}
        pool = list(c.pool)
        pool[i], pool[i + 1] = pool[i + 1], pool[i]
        return ShallowCirquent(tuple(pool), tuple(frozenset(swap.get(j, j) for j in g) for g in c.groups))
    if name == "exchange-ogroup":
        _need(rule, i is not None and 0 <= i < len(c.groups) - 1, "no adjacent ogroups at this position")
        groups = list(c.groups)
        groups[i], groups[i + 1] = groups[i + 1], groups[i]
        return ShallowCirquent(c.pool, tuple(groups))
    if name == "weaken-pool":
        _need(rule, i is not None and 0 <= i <= len(c.pool), "insertion point outside the pool")
        _need(rule, rule.formula is not None, "pool weakening needs a formula")
        pool = c.pool[:i] + (rule.formula,) + c.pool[i:]
        return ShallowCirquent(pool, tuple(frozenset(j + 1 if j >= i else j for j in g) for g in c.groups))
    if name == "weaken-ogroup":
        j = rule.second
        _need(rule, i is not None and 0 <= i < len(c.groups), "no such ogroup")
        _need(rule, j is not None and 0 <= j < len(c.pool), "no such oformula")
        _need(rule, j not in c.groups[i], "the arc is already there")
        groups = list(c.groups)
        groups[i] = groups[i] | {j}
        return ShallowCirquent(c.pool, tuple(groups))
    if name == "duplicate-down":
        _need(rule, i is not None and 0 <= i < len(c.groups), "no such ogroup")
        return ShallowCirquent(c.pool, c.groups[:i + 1] + c.groups[i:])
    if name == "duplicate-up":
        _need(rule, i is not None and 0 <= i < len(c.groups) - 1, "no adjacent ogroups at this position")
        _need(rule, c.groups[i] == c.groups[i + 1], "the two ogroups differ")
        return ShallowCirquent(c.pool, c.groups[:i + 1] + c.groups[i + 2:])

    _need(rule, i is not None and 0 <= i < len(c.pool) - 1, "no adjacent oformulas at this position")
    f, g = c.pool[i], c.pool[i + 1]
    if name == "contract":
        _need(rule, f == g, "the two oformulas differ")
        return _merge(c, i, f)
    if name == "or-intro":
        return _merge(c, i, Por((f, g)))
    if name == "and-intro":
        merged_groups: List[frozenset] = []
        k = 0
        while k < len(c.groups):
            group = c.groups[k]
            _need(rule, not (i in group and i + 1 in group), "an ogroup contains both oformulas")
            if i + 1 in group:
                raise RuleApplicationError(rule.name, f"ogroup {k} contains the right conjunct but does not follow a left-conjunct ogroup")
            if i in group:
                _need(
                    rule,
                    k + 1 < len(c.groups) and i + 1 in c.groups[k + 1] and i not in c.groups[k + 1],
                    f"ogroup {k} contains the left conjunct but is not followed by a right-conjunct ogroup",
                )
                merged_groups.append(group | c.groups[k + 1])
                k += 2
                continue
            merged_groups.append(group)
            k += 1
        return _merge(c, i, Pand((f, g)), merged_groups)
    raise RuleApplicationError(name, "unknown rule")


def check_step(
    premises: Sequence[ShallowCirquent],
    conclusion: ShallowCirquent,
    rule: CL5Rule,
    system: SystemId = SystemId.CCC,
) -> CheckResult:
    try:
        expected = apply_rule(rule, premises, system)
    except RuleApplicationError as exc:
        return CheckResult.reject(None, str(exc))
    except CoLError as exc:
        return CheckResult.reject(None, f"{rule.name}: {exc}")
    if expected != conclusion:
        return CheckResult.reject(None, f"{rule.name}: conclusion should be {expected}")
    return CheckResult.accept()
