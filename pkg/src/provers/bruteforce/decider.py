"""
CoL Toolkit - CL1/CL2 Decision Procedure
========================================
Exhaustive bottom-up search with the brute-force rules. A formula is
provable iff Rule 1 applies and all its premises are provable, or some
Rule 2 premise is provable, or (CL2 only) some Rule 3 premise is provable.

Termination: along every premise edge the triple
(general-atom occurrences, choice-connective occurrences, formula size)
strictly decreases lexicographically. Rule 1 and Rule 2 remove one choice
node, Rule 3 removes two general-atom occurrences.
"""
from __future__ import annotations

import logging
from typing import Dict, FrozenSet, List, Optional, Tuple

from src.logic.errors import ResourceExhausted
from src.logic.formula import Atom, Formula, Literal, SystemId, check_language, walk
from src.logic.normalizer import atoms, normalize
from src.logic.verdicts import Exhausted, Provable, SearchBudget, Unprovable, Verdict
from src.provers.bruteforce.proofs import BFProof, BFStep
from src.provers.bruteforce.rules import rule1_premises, rule2_premises, rule3_premises

logger = logging.getLogger(__name__)


def memo_key(f: Formula, original: FrozenSet[Atom]) -> Tuple:
    """Structure of f with atoms introduced by Rule 3 numbered by first occurrence"""
    fresh: Dict[Atom, int] = {}

    def encode(node: Formula) -> Tuple:
        if isinstance(node, Literal):
            atom = node.atom
            if atom in original:
                name: object = atom.name
            else:
                name = ("fresh", fresh.setdefault(atom, len(fresh)))
            return ("lit", name, node.negated)
        return (type(node).__name__,) + tuple(encode(child) for child in node.children())

    return encode(f)


class BruteForceDecider:
    """Memoized search engine for one target formula"""

    def __init__(self, system: SystemId, max_nodes: Optional[int] = None, timeout_ms: Optional[int] = None):
        if system not in (SystemId.CL1, SystemId.CL2):
            raise ValueError(f"brute-force search does not cover {system.value}")
        self.system = system
        self.max_nodes = max_nodes
        self.timeout_ms = timeout_ms

    def decide(self, f: Formula) -> Verdict:
        target = normalize(f)
        check_language(target, self.system)
        self._original = frozenset(atoms(target))
        self._memo: Dict[Tuple, bool] = {}
        self._budget = SearchBudget(self.max_nodes, self.timeout_ms)
        bounds = {"system": self.system.value, "max_nodes": self.max_nodes}
        logger.info("deciding %s in %s", target, self.system.value)
        try:
            provable = self._provable(target)
            if not provable:
                stats = self._budget.finish()
                logger.info("unprovable after %d nodes", stats.nodes)
                return Unprovable(bounds, stats)
            proof = self._build_proof(f, target)
        except ResourceExhausted as exc:
            return Exhausted(exc.reason, bounds, self._budget.finish())
        stats = self._budget.finish()
        logger.info("provable: %d-step proof after %d nodes", len(proof.steps), stats.nodes)
        return Provable(proof, stats)

    def _provable(self, f: Formula) -> bool:
        key = memo_key(f, self._original)
        if key in self._memo:
            self._budget.stats.memo_hits += 1
            return self._memo[key]
        self._budget.tick()
        self._memo[key] = self._justify(f) is not None
        return self._memo[key]

    def _justify(self, f: Formula):
        """First applicable rule in search order whose premises are all provable"""
        premises = rule1_premises(f)
        if premises is not None and all(self._provable(p) for p in premises):
            return ("R1", premises, None)
        for premise, detail in rule2_premises(f):
            if self._provable(premise):
                return ("R2", (premise,), detail)
        if self.system is SystemId.CL2:
            for premise, detail in rule3_premises(f):
                if self._provable(premise):
                    return ("R3", (premise,), detail)
        return None

    def _build_proof(self, original: Formula, target: Formula) -> BFProof:
        steps: List[BFStep] = []
        index: Dict[Formula, int] = {}

        def emit(f: Formula) -> int:
            if f in index:
                return index[f]
            rule, premises, detail = self._justify(f)
            premise_indices = tuple(emit(p) for p in premises)
            steps.append(BFStep(f, rule, premise_indices, detail))
            index[f] = len(steps) - 1
            return index[f]

        emit(target)
        return BFProof(self.system, original, tuple(steps))


def decide(f: Formula, system: SystemId, max_nodes: Optional[int] = None, timeout_ms: Optional[int] = None) -> Verdict:
    return BruteForceDecider(system, max_nodes, timeout_ms).decide(f)


def general_occurrences(f: Formula) -> int:
    return sum(1 for node in walk(f) if isinstance(node, Literal) and node.atom.is_general)
