"""
CoL Toolkit - CL15 Rules
========================
The CL15 rules in both directions. `apply_forward` reads a rule top-down,
building the conclusion from a premise and the recorded parameters;
`enumerate_premises` reads it bottom-up and lists every (premise, rule)
pair whose forward application gives back the conclusion.

Parameters are positions in the premise, except for the oformula-inserting
form of Weakening, which names positions in the conclusion.

    E-oformula/E-under/E-over {index}   swap index and index+1
    D-under/D-over {index}              duplicate group index
    M {index}                           merge overgroups index and index+1
    C {index}                           merge two identical ?F copies
    OrI/AndI {index}                    join oformulas index and index+1
    RecI {index, overgroup}             F becomes !F, its private overgroup goes
    CorecI {index, overgroups}          F becomes ?F and leaves those overgroups
    W {undergroup, oformula}            add an arc
    W {undergroup, oformula, formula, overgroups, new_overgroups}
                                        add an oformula deleted by the cascade
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

from src.cirquents.cl15.cirquent import Cirquent15, Groups
from src.logic.errors import CoLError, RuleApplicationError
from src.logic.formula import Brec, Cobrec, Formula, Pand, Por
from src.logic.normalizer import normalize
from src.logic.parsers.formula_parser import parse, render

TAGS = ("E-oformula", "E-under", "E-over", "W", "C", "D-under", "D-over", "M", "OrI", "AndI", "RecI", "CorecI")

_LIST_PARAMS = ("overgroups", "new_overgroups")


@dataclass(frozen=True)
class CL15Rule:
    tag: str
    params: Tuple[Tuple[str, Any], ...] = ()

    def __post_init__(self):
        if self.tag not in TAGS:
            raise RuleApplicationError(self.tag, "unknown rule")

    def get(self, name: str, default: Any = None) -> Any:
        return dict(self.params).get(name, default)

    def to_json(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {}
        for name, value in self.params:
            if isinstance(value, Formula):
                value = render(value)
            elif isinstance(value, tuple):
                value = list(value)
            out[name] = value
        return {"name": self.tag, "params": out}

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "CL15Rule":
        params = []
        for name, value in sorted((data.get("params") or {}).items()):
            if name == "formula":
                value = normalize(parse(value))
            elif name in _LIST_PARAMS:
                value = tuple(int(v) for v in value)
            else:
                value = int(value)
            params.append((name, value))
        return cls(data["name"], tuple(params))

    def __str__(self) -> str:
        args = ", ".join(f"{k}={render(v) if isinstance(v, Formula) else v}" for k, v in self.params)
        return f"{self.tag}({args})"


def rule(tag: str, **params: Any) -> CL15Rule:
    normalized = []
    for name, value in sorted(params.items()):
        if name in _LIST_PARAMS:
            value = tuple(sorted(value))
        normalized.append((name, value))
    return CL15Rule(tag, tuple(normalized))


def _need(tag: str, condition: bool, clause: str) -> None:
    if not condition:
        raise RuleApplicationError(tag, clause)


def _build(tag: str, oformulas, undergroups, overgroups) -> Cirquent15:
    try:
        return Cirquent15(tuple(oformulas), tuple(undergroups), tuple(overgroups))
    except ValueError as exc:
        raise RuleApplicationError(tag, f"result is not a cirquent: {exc}") from exc


def _remap(groups: Groups, image) -> Groups:
    return tuple(frozenset(image(j) for j in g) for g in groups)


def _swap(c: Cirquent15, i: int) -> Cirquent15:
    swap = {i: i + 1, i + 1: i}
    pool = list(c.oformulas)
    pool[i], pool[i + 1] = pool[i + 1], pool[i]

    def image(j):
        return swap.get(j, j)

    return Cirquent15(tuple(pool), _remap(c.undergroups, image), _remap(c.overgroups, image))


def _merge(c: Cirquent15, i: int, merged: Formula, undergroups: Optional[Groups] = None) -> Tuple:
    """Pool and groups with positions i, i+1 joined into one oformula"""
    def image(j):
        return j if j <= i else j - 1

    pool = c.oformulas[:i] + (merged,) + c.oformulas[i + 2:]
    under = c.undergroups if undergroups is None else undergroups
    return pool, _remap(under, image), _remap(c.overgroups, image)


def _split(c: Cirquent15, i: int, left: Formula, right: Formula) -> Tuple:
    """Pool with oformula i replaced by left, right; groups shifted, not yet assigned"""
    def image(j):
        return j if j < i else j + 1

    pool = c.oformulas[:i] + (left, right) + c.oformulas[i + 1:]
    return pool, image


def _replace(c: Cirquent15, i: int, f: Formula) -> Tuple[Formula, ...]:
    return c.oformulas[:i] + (f,) + c.oformulas[i + 1:]


def apply_forward(premise: Cirquent15, r: CL15Rule) -> Cirquent15:
    """Conclusion of r applied top-down to premise; RuleApplicationError if it does not apply."""
    c, tag = premise, r.tag
    n = len(c.oformulas)
    i = r.get("index")

    if tag == "E-oformula":
        _need(tag, i is not None and 0 <= i < n - 1, "no adjacent oformulas at this position")
        return _swap(c, i)
    if tag in ("E-under", "E-over", "D-under", "D-over", "M"):
        groups = c.undergroups if tag.endswith("under") else c.overgroups
        adjacent = tag.startswith("E") or tag == "M"
        _need(tag, i is not None and 0 <= i < len(groups) - (1 if adjacent else 0), "no such group")
        if tag.startswith("E"):
            groups = groups[:i] + (groups[i + 1], groups[i]) + groups[i + 2:]
        elif tag == "M":
            groups = groups[:i] + (groups[i] | groups[i + 1],) + groups[i + 2:]
        else:
            groups = groups[:i + 1] + groups[i:]
        if tag.endswith("under"):
            return _build(tag, c.oformulas, groups, c.overgroups)
        return _build(tag, c.oformulas, c.undergroups, groups)

    if tag == "W":
        return _weaken_forward(c, r)

    if tag in ("RecI", "CorecI"):
        _need(tag, i is not None and 0 <= i < n, "no such oformula")
        f = c.oformulas[i]
        if tag == "RecI":
            o = r.get("overgroup")
            _need(tag, o is not None and 0 <= o < len(c.overgroups), "no such overgroup")
            _need(tag, c.overgroups[o] == frozenset({i}), "the overgroup must contain just the oformula")
            overgroups = c.overgroups[:o] + c.overgroups[o + 1:]
            return _build(tag, _replace(c, i, Brec(f)), c.undergroups, overgroups)
        leaving = set(r.get("overgroups", ()))
        _need(tag, all(0 <= o < len(c.overgroups) for o in leaving), "no such overgroup")
        _need(tag, all(i in c.overgroups[o] for o in leaving), "the oformula can only leave overgroups it is in")
        overgroups = tuple(g - {i} if k in leaving else g for k, g in enumerate(c.overgroups))
        return _build(tag, _replace(c, i, Cobrec(f)), c.undergroups, overgroups)

    _need(tag, i is not None and 0 <= i < n - 1, "no adjacent oformulas at this position")
    f, g = c.oformulas[i], c.oformulas[i + 1]
    if tag == "C":
        _need(tag, isinstance(f, Cobrec) and f == g, "needs two identical ?-oformulas")
        _need(tag, c.same_membership(i, i + 1), "the two copies must be in the same groups")
        return _build(tag, *_merge(c, i, f))
    if tag == "OrI":
        _need(tag, c.same_membership(i, i + 1), "the disjuncts must be in the same groups")
        return _build(tag, *_merge(c, i, Por((f, g))))
    if tag == "AndI":
        _need(tag, c.overgroups_of(i) == c.overgroups_of(i + 1), "the conjuncts must share their overgroups")
        merged: List[FrozenSet[int]] = []
        k = 0
        under = c.undergroups
        while k < len(under):
            group = under[k]
            _need(tag, not (i in group and i + 1 in group), f"undergroup {k} contains both conjuncts")
            _need(tag, i + 1 not in group, f"undergroup {k} with the right conjunct does not follow a left-conjunct undergroup")
            if i in group:
                partner = under[k + 1] if k + 1 < len(under) else frozenset()
                _need(
                    tag,
                    i + 1 in partner and i not in partner and group - {i} == partner - {i + 1},
                    f"undergroup {k} is not followed by its right-conjunct twin",
                )
                merged.append(group | partner)
                k += 2
                continue
            merged.append(group)
            k += 1
        return _build(tag, *_merge(c, i, Pand((f, g)), tuple(merged)))
    raise RuleApplicationError(tag, "unknown rule")


def _weaken_forward(c: Cirquent15, r: CL15Rule) -> Cirquent15:
    u, j = r.get("undergroup"), r.get("oformula")
    _need("W", u is not None and 0 <= u < len(c.undergroups), "no such undergroup")
    formula = r.get("formula")
    if formula is None:
        _need("W", j is not None and 0 <= j < len(c.oformulas), "no such oformula")
        _need("W", j not in c.undergroups[u], "the arc is already there")
        under = tuple(g | {j} if k == u else g for k, g in enumerate(c.undergroups))
        return _build("W", c.oformulas, under, c.overgroups)

    _need("W", j is not None and 0 <= j <= len(c.oformulas), "insertion point outside the oformulas")
    fresh = set(r.get("new_overgroups", ()))
    joined = set(r.get("overgroups", ()))
    total = len(c.overgroups) + len(fresh)
    _need("W", joined and fresh <= joined, "new overgroups must be among the oformula's overgroups")
    _need("W", all(0 <= o < total for o in joined), "overgroup index outside the conclusion")

    def image(k):
        return k if k < j else k + 1

    pool = c.oformulas[:j] + (formula,) + c.oformulas[j:]
    under = tuple(frozenset(image(k) for k in g) | ({j} if m == u else set()) for m, g in enumerate(c.undergroups))
    old = iter(c.overgroups)
    over = []
    for o in range(total):
        if o in fresh:
            over.append(frozenset({j}))
        else:
            group = frozenset(image(k) for k in next(old))
            over.append(group | {j} if o in joined else group)
    return _build("W", pool, under, over)


def _subsets(items: Sequence[int]) -> Iterator[Tuple[int, ...]]:
    for size in range(len(items) + 1):
        yield from itertools.combinations(items, size)


def _covers(group: FrozenSet[int]) -> Iterator[Tuple[FrozenSet[int], FrozenSet[int]]]:
    """Ordered pairs (A, B) of nonempty sets with A | B == group"""
    members = sorted(group)
    for left in _subsets(members):
        if not left:
            continue
        left_set = frozenset(left)
        for extra in _subsets(left):
            right = (group - left_set) | frozenset(extra)
            if right:
                yield left_set, right


def enumerate_premises(c: Cirquent15, tag: str) -> List[Tuple[Cirquent15, CL15Rule]]:
    """Every (premise, rule) with apply_forward(premise, rule) == c, for one rule tag"""
    if tag not in TAGS:
        raise RuleApplicationError(tag, "unknown rule")
    out: List[Tuple[Cirquent15, CL15Rule]] = []
    n = len(c.oformulas)

    if tag == "E-oformula":
        for i in range(n - 1):
            out.append((_swap(c, i), rule(tag, index=i)))
    elif tag in ("E-under", "E-over"):
        groups = c.undergroups if tag == "E-under" else c.overgroups
        for i in range(len(groups) - 1):
            swapped = groups[:i] + (groups[i + 1], groups[i]) + groups[i + 2:]
            out.append((_with_groups(c, tag, swapped), rule(tag, index=i)))
    elif tag in ("D-under", "D-over"):
        groups = c.undergroups if tag == "D-under" else c.overgroups
        for i in range(len(groups) - 1):
            if groups[i] == groups[i + 1]:
                out.append((_with_groups(c, tag, groups[:i + 1] + groups[i + 2:]), rule(tag, index=i)))
    elif tag == "M":
        for i, group in enumerate(c.overgroups):
            for left, right in _covers(group):
                groups = c.overgroups[:i] + (left, right) + c.overgroups[i + 1:]
                out.append((Cirquent15(c.oformulas, c.undergroups, groups), rule(tag, index=i)))
    elif tag == "W":
        out.extend(_weaken_premises(c))
    elif tag == "C":
        for i, f in enumerate(c.oformulas):
            if isinstance(f, Cobrec):
                pool, image = _split(c, i, f, f)
                out.append((_duplicated(c, pool, image, i), rule(tag, index=i)))
    elif tag == "OrI":
        for i, f in enumerate(c.oformulas):
            if isinstance(f, Por) and len(f.args) == 2:
                pool, image = _split(c, i, *f.args)
                out.append((_duplicated(c, pool, image, i), rule(tag, index=i)))
    elif tag == "AndI":
        for i, f in enumerate(c.oformulas):
            if isinstance(f, Pand) and len(f.args) == 2:
                out.append((_and_premise(c, i), rule(tag, index=i)))
    elif tag == "RecI":
        for i, f in enumerate(c.oformulas):
            if isinstance(f, Brec):
                for o in range(len(c.overgroups) + 1):
                    overgroups = c.overgroups[:o] + (frozenset({i}),) + c.overgroups[o:]
                    out.append((Cirquent15(_replace(c, i, f.arg), c.undergroups, overgroups), rule(tag, index=i, overgroup=o)))
    elif tag == "CorecI":
        for i, f in enumerate(c.oformulas):
            if isinstance(f, Cobrec):
                outside = [k for k, g in enumerate(c.overgroups) if i not in g]
                for chosen in _subsets(outside):
                    overgroups = tuple(g | {i} if k in chosen else g for k, g in enumerate(c.overgroups))
                    out.append((Cirquent15(_replace(c, i, f.arg), c.undergroups, overgroups), rule(tag, index=i, overgroups=chosen)))
    return out


def _with_groups(c: Cirquent15, tag: str, groups: Groups) -> Cirquent15:
    if tag.endswith("under"):
        return Cirquent15(c.oformulas, groups, c.overgroups)
    return Cirquent15(c.oformulas, c.undergroups, groups)


def _duplicated(c: Cirquent15, pool, image, i: int) -> Cirquent15:
    """Premise where both halves of oformula i keep all of its memberships"""
    def spread(groups: Groups) -> Groups:
        return tuple(
            frozenset(image(j) for j in g if j != i) | ({i, i + 1} if i in g else set())
            for g in groups
        )

    return Cirquent15(pool, spread(c.undergroups), spread(c.overgroups))


def _and_premise(c: Cirquent15, i: int) -> Cirquent15:
    f = c.oformulas[i]
    pool, image = _split(c, i, *f.args)
    under: List[FrozenSet[int]] = []
    for g in c.undergroups:
        rest = frozenset(image(j) for j in g if j != i)
        if i in g:
            under += [rest | {i}, rest | {i + 1}]
        else:
            under.append(rest)
    over = tuple(
        frozenset(image(j) for j in g if j != i) | ({i, i + 1} if i in g else set())
        for g in c.overgroups
    )
    return Cirquent15(pool, tuple(under), over)


def _weaken_premises(c: Cirquent15) -> Iterator[Tuple[Cirquent15, CL15Rule]]:
    for u, group in enumerate(c.undergroups):
        if len(group) < 2:
            continue
        for j in sorted(group):
            under = tuple(g - {j} if k == u else g for k, g in enumerate(c.undergroups))
            if any(j in g for g in under):
                yield Cirquent15(c.oformulas, under, c.overgroups), rule("W", undergroup=u, oformula=j)
                continue

            def image(k):
                return k if k < j else k - 1

            joined = [o for o, g in enumerate(c.overgroups) if j in g]
            fresh = [o for o in joined if c.overgroups[o] == frozenset({j})]
            pool = c.oformulas[:j] + c.oformulas[j + 1:]
            over = tuple(frozenset(image(k) for k in g - {j}) for o, g in enumerate(c.overgroups) if o not in fresh)
            yield (
                Cirquent15(pool, _remap(under, image), over),
                rule("W", undergroup=u, oformula=j, formula=c.oformulas[j], overgroups=joined, new_overgroups=fresh),
            )


def check_transition(premise: Cirquent15, conclusion: Cirquent15, r: CL15Rule) -> Optional[str]:
    """None if conclusion follows from premise by r, otherwise the failed clause"""
    try:
        expected = apply_forward(premise, r)
    except CoLError as exc:
        return str(exc)
    if expected != conclusion:
        return f"{r.tag}: conclusion should be {expected}"
    return None
