"""
CoL Toolkit - CCC/CL5 Proof Search
==================================
Builds proofs constructively instead of enumerating inverse rules blindly.

1. Conservative ∨- and ∧-introduction are invertible, so the singleton
   cirquent of the target is taken apart bottom-up until every oformula is
   a literal.
2. A literal cirquent is derivable iff there is a set of complementary
   pairs (¬P, P) such that every ogroup contains one of them. Under CL5 the
   pairs must be disjoint; CCC lets them share occurrences and pays with
   Contraction.
3. The proof is then written top-down: one identity axiom per pair,
   Duplication for pairs that serve several ogroups, Mix, Contraction
   (CCC only), pool Weakening for unused literals, Exchanges into the
   target order, ogroup Weakening for the remaining arcs, and finally the
   recorded introductions replayed in reverse.

Because step 1 loses nothing, a failed pair search means unprovable.
"""
from __future__ import annotations

import logging
from typing import Dict, List, Optional, Sequence, Tuple

from src.cirquents.cl5.cirquent import ShallowCirquent, singleton
from src.cirquents.cl5.proofs import CL5Proof, CL5Step
from src.cirquents.cl5.rules import (
    CL5Rule,
    and_intro,
    apply_rule,
    axiom_identity,
    contract,
    duplicate_down,
    exchange_ogroup,
    exchange_oformula,
    mix,
    or_intro,
    weaken_ogroup,
    weaken_pool,
)
from src.logic.errors import LanguageGateError, ResourceExhausted
from src.logic.formula import Formula, Literal, Pand, Por, SystemId, check_language, walk
from src.logic.normalizer import normalize
from src.logic.verdicts import Exhausted, Provable, SearchBudget, Unprovable, Verdict

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


def decompose(c: ShallowCirquent) -> Tuple[ShallowCirquent, List[Tuple[ShallowCirquent, CL5Rule]]]:
    """Undo introductions down to literals; returns the literal cirquent and (premise, rule) pairs, root first."""
    trail: List[Tuple[ShallowCirquent, CL5Rule]] = []
    while True:
        i = next((k for k, f in enumerate(c.pool) if not isinstance(f, Literal)), None)
        if i is None:
            return c, trail
        f = c.pool[i]
        left, right = f.args
        pool = c.pool[:i] + (left, right) + c.pool[i + 1:]

        def shift(members):
            return frozenset(j if j < i else j + 1 for j in members if j != i)

        groups = []
        for group in c.groups:
            if i not in group:
                groups.append(shift(group))
            elif isinstance(f, Por):
                groups.append(shift(group) | {i, i + 1})
            else:
                groups.append(shift(group) | {i})
                groups.append(shift(group) | {i + 1})
        premise = ShallowCirquent(pool, tuple(groups))
        trail.append((premise, or_intro(i) if isinstance(f, Por) else and_intro(i)))
        c = premise


def _complementary(pool: Sequence[Formula], group) -> List[Pair]:
    out = []
    for a in sorted(group):
        for b in sorted(group):
            neg, pos = pool[a], pool[b]
            if neg.negated and not pos.negated and neg.atom == pos.atom:
                out.append((a, b))
    return out


def find_pairs(c: ShallowCirquent, monogamic: bool, budget: SearchBudget) -> Optional[List[Pair]]:
    """Complementary pairs with one inside every ogroup, disjoint when monogamic"""
    candidates = [_complementary(c.pool, g) for g in c.groups]
    if not monogamic:
        if not all(candidates):
            return None
        return list(dict.fromkeys(options[0] for options in candidates))

    def cover(k: int, chosen: List[Pair], used: frozenset) -> Optional[List[Pair]]:
        budget.tick()
        if k == len(c.groups):
            return chosen
        group = c.groups[k]
        if any(a in group and b in group for a, b in chosen):
            return cover(k + 1, chosen, used)
        for a, b in candidates[k]:
            if a in used or b in used:
                continue
            found = cover(k + 1, chosen + [(a, b)], used | {a, b})
            if found is not None:
                return found
        return None

    return cover(0, [], frozenset())


class _Builder:
    """Appends checked steps while tracking where target positions currently sit"""

    def __init__(self, system: SystemId):
        self.system = system
        self.steps: List[CL5Step] = []

    def add(self, rule: CL5Rule, premises: Sequence[int] = ()) -> int:
        conclusion = apply_rule(rule, [self.steps[p].cirquent for p in premises], self.system)
        self.steps.append(CL5Step(conclusion, rule, tuple(premises)))
        return len(self.steps) - 1

    def cirquent(self, index: int) -> ShallowCirquent:
        return self.steps[index].cirquent


def build_proof(
    target: Formula,
    literal: ShallowCirquent,
    trail: Sequence[Tuple[ShallowCirquent, CL5Rule]],
    pairs: Sequence[Pair],
    system: SystemId,
) -> CL5Proof:
    builder = _Builder(system)
    owner: Dict[int, int] = {}
    for j, group in enumerate(literal.groups):
        owner[j] = next(k for k, (a, b) in enumerate(pairs) if a in group and b in group)

    # pool labels and ogroup labels name positions of the literal cirquent
    current: Optional[int] = None
    pool_labels: List[int] = []
    group_labels: List[int] = []
    for k, (a, b) in enumerate(pairs):
        served = [j for j in range(len(literal.groups)) if owner[j] == k]
        if not served:
            continue
        step = builder.add(axiom_identity(literal.pool[b]))
        for _ in served[1:]:
            step = builder.add(duplicate_down(0), [step])
        current = step if current is None else builder.add(mix(), [current, step])
        pool_labels += [a, b]
        group_labels += served

    while len(set(pool_labels)) < len(pool_labels):
        seen: Dict[int, int] = {}
        for q, label in enumerate(pool_labels):
            if label in seen:
                p = seen[label]
                break
            seen[label] = q
        while q > p + 1:
            current = builder.add(exchange_oformula(q - 1), [current])
            pool_labels[q - 1], pool_labels[q] = pool_labels[q], pool_labels[q - 1]
            q -= 1
        current = builder.add(contract(p), [current])
        del pool_labels[p + 1]

    for t in range(len(literal.pool)):
        if t not in pool_labels:
            current = builder.add(weaken_pool(len(pool_labels), literal.pool[t]), [current])
            pool_labels.append(t)

    for labels, exchange in ((pool_labels, exchange_oformula), (group_labels, exchange_ogroup)):
        swapped = True
        while swapped:
            swapped = False
            for i in range(len(labels) - 1):
                if labels[i] > labels[i + 1]:
                    current = builder.add(exchange(i), [current])
                    labels[i], labels[i + 1] = labels[i + 1], labels[i]
                    swapped = True

    for j, group in enumerate(literal.groups):
        for member in sorted(group - builder.cirquent(current).groups[j]):
            current = builder.add(weaken_ogroup(j, member), [current])

    for _, rule in reversed(trail):
        current = builder.add(rule, [current])
    return CL5Proof(system, target, tuple(builder.steps))


def search_proof(
    f: Formula,
    system: SystemId = SystemId.CL5,
    max_nodes: Optional[int] = None,
    timeout_ms: Optional[int] = None,
) -> Verdict:
    if system not in (SystemId.CCC, SystemId.CL5):
        raise ValueError(f"shallow cirquent search does not cover {system.value}")
    target = normalize(f)
    check_language(target, system)
    if any(isinstance(node, (Pand, Por)) and len(node.args) != 2 for node in walk(target)):
        raise LanguageGateError(system.value, "proof search needs binary connectives")
    budget = SearchBudget(max_nodes, timeout_ms)
    bounds = {"system": system.value, "max_nodes": max_nodes}
    logger.info("searching %s proof of %s", system.value, target)
    try:
        literal, trail = decompose(singleton(target))
        pairs = find_pairs(literal, system is SystemId.CL5, budget)
    except ResourceExhausted as exc:
        return Exhausted(exc.reason, bounds, budget.finish())
    if pairs is None:
        stats = budget.finish()
        logger.info("no pair cover for %d ogroups", len(literal.groups))
        return Unprovable(bounds, stats)
    proof = build_proof(f, literal, trail, pairs, system)
    stats = budget.finish()
    logger.info("%d-step proof built after %d nodes", len(proof.steps), stats.nodes)
    return Provable(proof, stats)
