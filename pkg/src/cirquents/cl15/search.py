"""
CoL Toolkit - CL15 Decision Procedure
=====================================
Depth-first bottom-up search from the target cirquent towards an Axiom.

In the default modes the invertible rules OrI, AndI and RecI are applied
eagerly (one instance, no alternatives). Then the structural closure test
settles everything Exchange, Duplication, Merging and Weakening could
still do. Otherwise each CorecI instance is tried, and Contraction comes
last, counted per branch against the contraction budget. Budgets 0, 1, ...
up to the configured one are tried in turn, so a proof found under budget
k is the same proof under every larger budget.

This order is not the rule listing E, W, C, D, M, OrI, AndI, RecI, CorecI.
OrI, AndI and RecI go first because they are invertible: whenever the
cirquent is provable, so is its unique premise under them, so committing
to that premise loses nothing. The closure test comes before CorecI and
Contraction because it is complete for the structural rules, and
Contraction is last since it is the only rule that grows the premise.

`depth_limited` mode drops the shortcuts and enumerates every rule in the
fixed order OrI, AndI, RecI, CorecI, axiom test, D, W, M, E, C up to
`max_proof_length` steps.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet, List, Optional, Set, Tuple

from src.cirquents.cl15.canonical import Key, canonical_key
from src.cirquents.cl15.cirquent import Cirquent15, axiom_match, formula_to_target
from src.cirquents.cl15.closure import Derivation, structural_derivation
from src.cirquents.cl15.proofs import CL15Proof, CL15Step
from src.cirquents.cl15.rules import enumerate_premises
from src.logic.errors import LanguageGateError, ResourceExhausted
from src.logic.formula import Formula, Pand, Por, walk
from src.logic.verdicts import Exhausted, Provable, SearchBudget, Unprovable, Verdict

logger = logging.getLogger(__name__)

EAGER = ("OrI", "AndI", "RecI")
STRUCTURAL = ("D-under", "D-over", "W", "M", "E-oformula", "E-under", "E-over")


class SearchMode(Enum):
    CL15C = "cl15c"
    BOUNDED = "bounded"
    DEPTH_LIMITED = "depth_limited"


@dataclass(frozen=True)
class SearchConfig:
    contraction_budget: int = 1
    max_nodes: Optional[int] = 1_000_000
    max_proof_length: int = 64
    max_oformulas: int = 32
    mode: SearchMode = SearchMode.BOUNDED
    timeout_ms: Optional[int] = None
    modulo_formula_symmetry: bool = False

    def __post_init__(self):
        if isinstance(self.mode, str):
            object.__setattr__(self, "mode", SearchMode(self.mode))
        if self.contraction_budget < 0:
            raise ValueError("contraction budget must not be negative")
        if self.mode is SearchMode.CL15C:
            object.__setattr__(self, "contraction_budget", 0)

    def bounds(self) -> dict:
        return {
            "system": "cl15",
            "mode": self.mode.value,
            "contraction_budget": self.contraction_budget,
            "max_nodes": self.max_nodes,
            "max_proof_length": self.max_proof_length,
            "max_oformulas": self.max_oformulas,
        }


class CL15Decider:
    def __init__(self, config: Optional[SearchConfig] = None):
        self.config = config or SearchConfig()

    def decide(self, f: Formula) -> Verdict:
        target = formula_to_target(f)
        if any(isinstance(node, (Pand, Por)) and len(node.args) != 2 for node in walk(target.oformulas[0])):
            raise LanguageGateError("cl15", "proof search needs binary connectives")
        cfg = self.config
        self._budget = SearchBudget(cfg.max_nodes, cfg.timeout_ms)
        self._failed: Set[Tuple[Key, int]] = set()
        self._cut: Optional[str] = None
        logger.info("deciding %s in CL15 (%s, contraction budget %d)", target.oformulas[0], cfg.mode.value, cfg.contraction_budget)
        try:
            for k in range(cfg.contraction_budget + 1):
                derivation = self._prove(target, k, frozenset(), 0)
                if derivation is not None:
                    proof = CL15Proof(f, tuple(CL15Step(c, r) for c, r in derivation))
                    stats = self._budget.finish()
                    logger.info("provable with contraction budget %d: %d steps, %d nodes", k, len(proof), stats.nodes)
                    return Provable(proof, stats)
        except ResourceExhausted as exc:
            return Exhausted(exc.reason, cfg.bounds(), self._budget.finish())
        stats = self._budget.finish()
        if self._cut is not None:
            return Exhausted(self._cut, cfg.bounds(), stats)
        logger.info("unprovable under %s after %d nodes", cfg.bounds(), stats.nodes)
        return Unprovable(cfg.bounds(), stats)

    def _prove(self, c: Cirquent15, contractions: int, branch: FrozenSet[Key], depth: int) -> Optional[Derivation]:
        cfg = self.config
        self._budget.tick()
        if len(c.oformulas) > cfg.max_oformulas:
            self._cut = f"cirquent grew past {cfg.max_oformulas} oformulas"
            return None
        key = canonical_key(c, cfg.modulo_formula_symmetry)
        if key in branch:
            self._budget.stats.pruned_duplicates += 1
            return None
        limited = cfg.mode is SearchMode.DEPTH_LIMITED
        if not limited:
            if (key, contractions) in self._failed:
                self._budget.stats.memo_hits += 1
                return None
            found = self._shortcut(c, contractions, branch | {key}, depth)
            if found is None:
                self._failed.add((key, contractions))
            return found
        if depth >= cfg.max_proof_length:
            self._cut = f"proof length limit {cfg.max_proof_length} reached"
            return None
        return self._exhaustive(c, contractions, branch | {key}, depth)

    def _above(self, premise: Cirquent15, r, c: Cirquent15, contractions: int, branch, depth: int) -> Optional[Derivation]:
        found = self._prove(premise, contractions, branch, depth + 1)
        return found + [(c, r)] if found is not None else None

    def _shortcut(self, c: Cirquent15, contractions: int, branch: FrozenSet[Key], depth: int) -> Optional[Derivation]:
        for tag in EAGER:
            premises = enumerate_premises(c, tag)
            if premises:
                premise, r = premises[0]
                return self._above(premise, r, c, contractions, branch, depth)
        derivation = structural_derivation(c, self._budget)
        if derivation is not None:
            return derivation
        for premise, r in enumerate_premises(c, "CorecI"):
            found = self._above(premise, r, c, contractions, branch, depth)
            if found is not None:
                return found
        if contractions > 0:
            for premise, r in enumerate_premises(c, "C"):
                found = self._above(premise, r, c, contractions - 1, branch, depth)
                if found is not None:
                    return found
        return None

    def _exhaustive(self, c: Cirquent15, contractions: int, branch: FrozenSet[Key], depth: int) -> Optional[Derivation]:
        for tag in EAGER + ("CorecI",):
            for premise, r in enumerate_premises(c, tag):
                found = self._above(premise, r, c, contractions, branch, depth)
                if found is not None:
                    return found
        if axiom_match(c):
            return [(c, None)]
        for tag in STRUCTURAL:
            for premise, r in enumerate_premises(c, tag):
                if tag == "M" and c.overgroups[r.get("index")] in premise.overgroups[r.get("index"):r.get("index") + 2]:
                    continue
                found = self._above(premise, r, c, contractions, branch, depth)
                if found is not None:
                    return found
        if contractions > 0:
            for premise, r in enumerate_premises(c, "C"):
                found = self._above(premise, r, c, contractions - 1, branch, depth)
                if found is not None:
                    return found
        return None


def decide(f: Formula, config: Optional[SearchConfig] = None) -> Verdict:
    return CL15Decider(config).decide(f)
