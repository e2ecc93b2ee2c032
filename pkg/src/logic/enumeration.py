"""
CoL Toolkit - Formula Enumeration
=================================
Exhaustive and seeded-random formula families for the property suites and
the corpus runner.
"""
from __future__ import annotations

import random
from functools import lru_cache
from typing import Callable, Iterator, List, Sequence, Tuple, Type

from src.logic.formula import Atom, Chand, Chor, Formula, Literal, Pand, Por

Connective = Type[Formula]

CL1_CONNECTIVES: Tuple[Connective, ...] = (Pand, Por, Chand, Chor)
CLASSICAL_CONNECTIVES: Tuple[Connective, ...] = (Pand, Por)


def literals_over(names: Sequence[str]) -> List[Literal]:
    """Positive and negative literal for every atom name"""
    out = []
    for name in names:
        out.append(Literal(Atom(name)))
        out.append(Literal(Atom(name), True))
    return out


def enumerate_formulas(
    leaves: Sequence[Formula],
    max_connectives: int,
    connectives: Sequence[Connective] = CL1_CONNECTIVES,
) -> Iterator[Formula]:
    """Every binary formula tree over the leaves with at most max_connectives nodes."""
    leaves = tuple(leaves)
    connectives = tuple(connectives)

    @lru_cache(maxsize=None)
    def exactly(n: int) -> Tuple[Formula, ...]:
        if n == 0:
            return leaves
        out = []
        for op in connectives:
            for left_size in range(n):
                for left in exactly(left_size):
                    for right in exactly(n - 1 - left_size):
                        out.append(op((left, right)))
        return tuple(out)

    for n in range(max_connectives + 1):
        yield from exactly(n)


def random_formula(
    rng: random.Random,
    leaves: Sequence[Formula],
    max_connectives: int,
    connectives: Sequence[Connective] = CL1_CONNECTIVES,
) -> Formula:
    size = rng.randint(0, max_connectives)
    return _random_tree(rng, tuple(leaves), size, tuple(connectives))


def _random_tree(rng: random.Random, leaves, size: int, connectives) -> Formula:
    if size == 0:
        return rng.choice(leaves)
    left = rng.randint(0, size - 1)
    op = rng.choice(connectives)
    return op((_random_tree(rng, leaves, left, connectives), _random_tree(rng, leaves, size - 1 - left, connectives)))


def formulas_with_literal_bound(
    names: Sequence[str],
    max_literals: int,
    connectives: Sequence[Connective] = CLASSICAL_CONNECTIVES,
    keep: Callable[[Formula], bool] = lambda f: True,
) -> Iterator[Formula]:
    """Binary trees with at most max_literals leaves (n leaves means n - 1 connectives)."""
    for f in enumerate_formulas(literals_over(names), max_literals - 1, connectives):
        if keep(f):
            yield f
