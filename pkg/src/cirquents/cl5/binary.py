"""
CoL Toolkit - Binary Tautologies
================================
A formula is binary when no atom occurs in it more than twice, and normal
binary when, in addition, an atom that occurs twice occurs once positively
and once negatively. A CL5 theorem is exactly an instance of a binary
tautology, so CL5 is decided by looking for a normal-binary tautology that
maps onto the formula: give every literal occurrence its own atom, then
share atoms between chosen positive/negative occurrence pairs of the same
original atom.

Sharing more pairs can only help, so the search walks the matchings that
leave no pair of opposite occurrences of one atom both unmatched.
"""
from __future__ import annotations

import logging
from collections import Counter
from typing import Dict, Iterator, List, Optional, Tuple

from src.logic.classical import is_tautology
from src.logic.errors import ResourceExhausted
from src.logic.formula import Atom, Formula, Literal, SystemId, check_language, walk
from src.logic.normalizer import normalize
from src.logic.occurrences import Path, literal_sites, replace_at

logger = logging.getLogger(__name__)

DEFAULT_OCCURRENCE_BOUND = 16


def is_binary(f: Formula) -> bool:
    counts = Counter(node.atom for node in walk(f) if isinstance(node, Literal))
    return all(n <= 2 for n in counts.values())


def is_normal_binary(f: Formula) -> bool:
    seen: Dict[Atom, List[bool]] = {}
    for node in walk(f):
        if isinstance(node, Literal):
            seen.setdefault(node.atom, []).append(node.negated)
    return all(len(signs) == 1 or (len(signs) == 2 and signs[0] != signs[1]) for signs in seen.values())


def _matchings(positive: List[Path], negative: List[Path]) -> Iterator[List[Tuple[Path, Path]]]:
    """Matchings of one atom's occurrences that leave one side fully used"""
    if not positive or not negative:
        yield []
        return
    head, rest = positive[0], positive[1:]
    for k, partner in enumerate(negative):
        for tail in _matchings(rest, negative[:k] + negative[k + 1:]):
            yield [(head, partner)] + tail
    # head may stay unmatched only while enough negatives remain for the rest
    if len(rest) >= len(negative):
        yield from _matchings(rest, negative)


def skeletons(f: Formula) -> Iterator[Formula]:
    """Normal-binary formulas of which f is an instance"""
    sites: Dict[Atom, Tuple[List[Path], List[Path]]] = {}
    for site in literal_sites(f):
        positive, negative = sites.setdefault(site.subformula.atom, ([], []))
        (negative if site.subformula.negated else positive).append(site.path)
    atoms = list(sites)

    def expand(k: int, chosen: List[Tuple[Path, Path]]) -> Iterator[List[Tuple[Path, Path]]]:
        if k == len(atoms):
            yield chosen
            return
        positive, negative = sites[atoms[k]]
        for matching in _matchings(positive, negative):
            yield from expand(k + 1, chosen + matching)

    all_paths = [site.path for site in literal_sites(f)]
    for matching in expand(0, []):
        skeleton = f
        shared = set()
        for k, (pos, neg) in enumerate(matching):
            skeleton = replace_at(skeleton, pos, Literal(Atom(f"s{k}")))
            skeleton = replace_at(skeleton, neg, Literal(Atom(f"s{k}"), True))
            shared.update((pos, neg))
        for k, path in enumerate(p for p in all_paths if p not in shared):
            skeleton = replace_at(skeleton, path, Literal(Atom(f"u{k}")))
        yield skeleton


def binary_skeleton(f: Formula, occurrence_bound: int = DEFAULT_OCCURRENCE_BOUND) -> Optional[Formula]:
    """A normal-binary tautology that maps onto f, if there is one"""
    target = normalize(f)
    check_language(target, SystemId.CL5)
    occurrences = len(literal_sites(target))
    if occurrences > occurrence_bound:
        raise ResourceExhausted(f"{occurrences} literal occurrences exceed the bound of {occurrence_bound}")
    tried = 0
    for skeleton in skeletons(target):
        tried += 1
        if is_tautology(skeleton):
            logger.debug("binary tautology found after %d skeletons", tried)
            return skeleton
    logger.debug("none of %d skeletons is a tautology", tried)
    return None


def decide_binary(f: Formula, occurrence_bound: int = DEFAULT_OCCURRENCE_BOUND) -> bool:
    return binary_skeleton(f, occurrence_bound) is not None


def decide(f: Formula, system: SystemId, occurrence_bound: int = DEFAULT_OCCURRENCE_BOUND) -> bool:
    """CCC theorems are the classical tautologies; CL5 ones the binary-tautology instances."""
    target = normalize(f)
    check_language(target, system)
    if system is SystemId.CCC:
        return is_tautology(target)
    if system is SystemId.CL5:
        return decide_binary(target, occurrence_bound)
    raise ValueError(f"shallow cirquent decision does not cover {system.value}")
