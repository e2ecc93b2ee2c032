"""
CoL Toolkit - Brute-Force Rules
===============================
The three CL1/CL2 rules read bottom-up, over formulas in negation normal
form. In NNF a positive choice conjunction and a negated choice disjunction
both appear as a surface "*", so Rule 1 only looks at surface "*" sites and
Rule 2 only at surface "+" sites.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

from src.logic.classical import is_stable
from src.logic.formula import Atom, ConnectiveKind, Formula, Literal
from src.logic.normalizer import atoms
from src.logic.occurrences import Path, literal_sites, replace_at, surface_sites


@dataclass(frozen=True)
class Rule2Detail:
    path: Path
    component: int

    def to_json(self) -> dict:
        return {"path": list(self.path), "component": self.component}


@dataclass(frozen=True)
class Rule3Detail:
    positive: Path
    negative: Path
    fresh: Atom

    def to_json(self) -> dict:
        return {"positive": list(self.positive), "negative": list(self.negative), "fresh": self.fresh.name}


def rule1_premises(f: Formula) -> Optional[Tuple[Formula, ...]]:
    """None unless f is stable; otherwise every resolution of one surface "*"."""
    if not is_stable(f):
        return None
    premises: List[Formula] = []
    for site in surface_sites(f, ConnectiveKind.CHAND):
        if not site.surface:
            continue
        for component in site.subformula.args:
            premise = replace_at(f, site.path, component)
            if premise not in premises:
                premises.append(premise)
    return tuple(premises)


def rule2_premises(f: Formula) -> List[Tuple[Formula, Rule2Detail]]:
    out = []
    for site in surface_sites(f, ConnectiveKind.CHOR):
        if not site.surface:
            continue
        for index, component in enumerate(site.subformula.args):
            out.append((replace_at(f, site.path, component), Rule2Detail(site.path, index)))
    return out


def fresh_atom(f: Formula, general: Atom) -> Atom:
    """Lowercase twin of a general atom, numbered if f already uses the name."""
    used = {atom.name for atom in atoms(f)}
    base = general.name[0].lower() + general.name[1:]
    if base not in used:
        return Atom(base)
    counter = 1
    while f"{base}{counter}" in used:
        counter += 1
    return Atom(f"{base}{counter}")


def rule3_premises(f: Formula) -> List[Tuple[Formula, Rule3Detail]]:
    """Pair a surface P with a surface ~P and turn both into a fresh elementary atom."""
    sites = [s for s in literal_sites(f, surface_only=True) if s.subformula.atom.is_general]
    positives = [s for s in sites if not s.subformula.negated]
    negatives = [s for s in sites if s.subformula.negated]
    out = []
    for pos in positives:
        for neg in negatives:
            if neg.subformula.atom != pos.subformula.atom:
                continue
            fresh = fresh_atom(f, pos.subformula.atom)
            premise = replace_at(f, pos.path, Literal(fresh))
            premise = replace_at(premise, neg.path, Literal(fresh, True))
            out.append((premise, Rule3Detail(pos.path, neg.path, fresh)))
    return out
