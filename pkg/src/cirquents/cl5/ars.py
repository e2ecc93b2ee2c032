"""
CoL Toolkit - Abstract Resource Semantics
=========================================
Validity of a shallow cirquent under resource semantics. Every literal
occurrence is a port; an arrangement pairs ports with opposite labels of one
atom, each port in at most one pair. An assignment gives every port the
truth value of its literal and is consistent with the arrangement when
paired ports get opposite values. The cirquent is valid iff some
arrangement makes every consistent assignment satisfy every ogroup.

Adding a pair only removes consistent assignments, so it is enough to look
at the maximal arrangements. Assignments that refuted one arrangement are
cached and refute every later arrangement they are consistent with.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from src.cirquents.cl5.cirquent import Port, ShallowCirquent, ports
from src.logic.classical import truth_table
from src.logic.errors import ResourceExhausted
from src.logic.formula import Atom, Formula, Literal
from src.logic.occurrences import replace_at

logger = logging.getLogger(__name__)

DEFAULT_PORT_BOUND = 16

Pair = Tuple[Port, Port]
Arrangement = FrozenSet[Pair]
PortAssignment = Dict[Port, bool]


@dataclass(frozen=True)
class ArsResult:
    valid: bool
    witness: Optional[Arrangement] = None
    arrangements_checked: int = field(default=0, compare=False)

    def __bool__(self) -> bool:
        return self.valid


def consistent(assignment: PortAssignment, arrangement: Arrangement) -> bool:
    return all(assignment[a] != assignment[b] for a, b in arrangement)


def maximal_arrangements(c: ShallowCirquent) -> Iterator[Arrangement]:
    """Every maximal monogamic arrangement, pairs sorted by port identifiers"""
    by_atom: Dict[Atom, Tuple[List[Port], List[Port]]] = {}
    for port, literal in ports(c):
        positive, negative = by_atom.setdefault(literal.atom, ([], []))
        (negative if literal.negated else positive).append(port)

    per_atom: List[List[Tuple[Pair, ...]]] = []
    for positive, negative in by_atom.values():
        short, long = (positive, negative) if len(positive) <= len(negative) else (negative, positive)
        options = []
        for image in itertools.permutations(long, len(short)):
            options.append(tuple(tuple(sorted(pair)) for pair in zip(short, image)))
        per_atom.append(options)

    for choice in itertools.product(*per_atom):
        yield frozenset(pair for pairs in choice for pair in pairs)


def _port_variables(c: ShallowCirquent, arrangement: Arrangement) -> Dict[Port, Literal]:
    """Literal over a fresh variable whose truth value is the port's value"""
    variables: Dict[Port, Literal] = {}
    for k, (a, b) in enumerate(sorted(arrangement)):
        variables[a] = Literal(Atom(f"pair{k}"))
        variables[b] = Literal(Atom(f"pair{k}"), True)
    free = 0
    for port, _ in ports(c):
        if port not in variables:
            variables[port] = Literal(Atom(f"free{free}"))
            free += 1
    return variables


def _port_formula(c: ShallowCirquent, variables: Dict[Port, Literal]) -> Formula:
    pool = list(c.pool)
    for (position, path), literal in variables.items():
        pool[position] = replace_at(pool[position], path, literal)
    return ShallowCirquent(tuple(pool), c.groups).as_formula()


def refute(c: ShallowCirquent, arrangement: Arrangement) -> Optional[PortAssignment]:
    """A consistent assignment falsifying c, or None if the arrangement validates c"""
    variables = _port_variables(c, arrangement)
    formula = _port_formula(c, variables)
    order = sorted({lit.atom for lit in variables.values()}, key=lambda atom: atom.name)
    table = truth_table(formula, order)
    failing = np.flatnonzero(~table)
    if failing.size == 0:
        return None
    row = int(failing[0])
    bits = {atom: bool((row >> k) & 1) for k, atom in enumerate(order)}
    return {port: bits[lit.atom] != lit.negated for port, lit in variables.items()}


def ars_valid(c: ShallowCirquent, port_bound: int = DEFAULT_PORT_BOUND) -> ArsResult:
    count = len(ports(c))
    if count > port_bound:
        raise ResourceExhausted(f"{count} ports exceed the arrangement bound of {port_bound}")
    countermodels: List[PortAssignment] = []
    checked = 0
    for arrangement in maximal_arrangements(c):
        checked += 1
        if any(consistent(model, arrangement) for model in countermodels):
            continue
        model = refute(c, arrangement)
        if model is None:
            logger.debug("validating arrangement found after %d candidates", checked)
            return ArsResult(True, arrangement, checked)
        countermodels.append(model)
    logger.debug("no validating arrangement among %d candidates", checked)
    return ArsResult(False, None, checked)


def validates(c: ShallowCirquent, arrangement: Sequence[Pair]) -> bool:
    """Whether a given arrangement validates c"""
    return refute(c, frozenset(tuple(sorted(pair)) for pair in arrangement)) is None
