"""
CoL Toolkit - CL15 Canonical Keys
=================================
Two cirquents are essentially identical when Exchange alone turns one into
the other, i.e. they agree up to reordering the oformulas, the undergroups
and the overgroups. `canonical_key` is equal exactly for such cirquents.

Oformulas are colored by their rendering and the colors are refined by
group membership until stable; remaining ties are broken by trying each
member of the first tied class in turn. The key is the least encoding over
all resulting orders.
"""
from __future__ import annotations

from typing import List, Sequence, Tuple

from src.cirquents.cl15.cirquent import Cirquent15
from src.logic.formula import Brec, Cobrec, Formula, Pand, Por
from src.logic.parsers.formula_parser import render

Key = Tuple


def formula_signature(f: Formula, modulo_formula_symmetry: bool = False) -> str:
    """Rendering of f; with the flag, & and | are read as associative and commutative."""
    if not modulo_formula_symmetry:
        return render(f)
    if isinstance(f, (Pand, Por)):
        parts: List[str] = []
        stack = list(f.args)
        while stack:
            arg = stack.pop(0)
            if type(arg) is type(f):
                stack = list(arg.args) + stack
            else:
                parts.append(formula_signature(arg, True))
        op = " & " if isinstance(f, Pand) else " | "
        return "(" + op.join(sorted(parts)) + ")"
    if isinstance(f, (Brec, Cobrec)):
        return ("!" if isinstance(f, Brec) else "?") + "(" + formula_signature(f.arg, True) + ")"
    return render(f)


def _rank(values: Sequence) -> List[int]:
    order = {v: k for k, v in enumerate(sorted(set(values)))}
    return [order[v] for v in values]


def _refine(c: Cirquent15, colors: List[int]) -> List[int]:
    while True:
        signatures = []
        for i in range(len(c.oformulas)):
            under = tuple(sorted(tuple(sorted(colors[j] for j in g)) for g in c.undergroups if i in g))
            over = tuple(sorted(tuple(sorted(colors[j] for j in g)) for g in c.overgroups if i in g))
            signatures.append((colors[i], under, over))
        refined = _rank(signatures)
        if len(set(refined)) == len(set(colors)):
            return refined
        colors = refined


def _encode(c: Cirquent15, labels: Sequence[str], order: Sequence[int]) -> Key:
    position = {old: new for new, old in enumerate(order)}
    return (
        tuple(labels[i] for i in order),
        tuple(sorted(tuple(sorted(position[j] for j in g)) for g in c.undergroups)),
        tuple(sorted(tuple(sorted(position[j] for j in g)) for g in c.overgroups)),
    )


def canonical_key(c: Cirquent15, modulo_formula_symmetry: bool = False) -> Key:
    labels = [formula_signature(f, modulo_formula_symmetry) for f in c.oformulas]
    best: List[Key] = []

    def search(colors: List[int]) -> None:
        colors = _refine(c, colors)
        counts = {}
        for color in colors:
            counts[color] = counts.get(color, 0) + 1
        tied = [color for color in sorted(counts) if counts[color] > 1]
        if not tied:
            order = sorted(range(len(colors)), key=lambda i: colors[i])
            key = _encode(c, labels, order)
            if not best or key < best[0]:
                best[:] = [key]
            return
        target = tied[0]
        for i in range(len(colors)):
            if colors[i] == target:
                # the chosen member goes first within its class
                search([2 * k + (0 if j == i else 1) if k == target else 2 * k + 1 for j, k in enumerate(colors)])

    search(_rank(labels))
    return best[0]


def essentially_identical(a: Cirquent15, b: Cirquent15, modulo_formula_symmetry: bool = False) -> bool:
    return canonical_key(a, modulo_formula_symmetry) == canonical_key(b, modulo_formula_symmetry)
