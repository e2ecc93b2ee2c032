"""
CoL Toolkit - Normalization
===========================
Negation normal form, explicit flattening, atom renaming and the simple
counting measures every prover relies on.
"""
from __future__ import annotations

from typing import Mapping, Tuple

from src.logic.formula import (
    Atom,
    Brec,
    Brimpl,
    Chand,
    Chor,
    Cobrec,
    FalseConst,
    Formula,
    Impl,
    Literal,
    Neg,
    Pand,
    Por,
    RECURRENCE,
    TrueConst,
    walk,
)

_DUAL = {Pand: Por, Por: Pand, Chand: Chor, Chor: Chand, Brec: Cobrec, Cobrec: Brec}


def normalize(f: Formula) -> Formula:
    """Push negation onto atoms and expand -> and o->.

    F -> G becomes ~F | G and F o-> G becomes ?~F | G; De Morgan dualities
    swap & with |, * with + and ! with ?. Idempotent.
    """
    return _nnf(f, False)


def _nnf(f: Formula, negate: bool) -> Formula:
    if isinstance(f, TrueConst):
        return FalseConst() if negate else f
    if isinstance(f, FalseConst):
        return TrueConst() if negate else f
    if isinstance(f, Literal):
        return f.flipped() if negate else f
    if isinstance(f, Neg):
        return _nnf(f.arg, not negate)
    if isinstance(f, Impl):
        return _nnf(Por((Neg(f.lhs), f.rhs)), negate)
    if isinstance(f, Brimpl):
        return _nnf(Por((Cobrec(Neg(f.lhs)), f.rhs)), negate)
    if isinstance(f, (Brec, Cobrec)):
        node = _DUAL[type(f)] if negate else type(f)
        return node(_nnf(f.arg, negate))
    node = _DUAL[type(f)] if negate else type(f)
    return node(tuple(_nnf(arg, negate) for arg in f.args))


def is_normalized(f: Formula) -> bool:
    return not any(isinstance(node, (Neg, Impl, Brimpl)) for node in walk(f))


def flatten(f: Formula) -> Formula:
    """Merge directly nested connectives of the same kind into one n-ary node."""
    if isinstance(f, (Pand, Por, Chand, Chor)):
        args = []
        for arg in f.args:
            arg = flatten(arg)
            if type(arg) is type(f):
                args.extend(arg.args)
            else:
                args.append(arg)
        return type(f)(tuple(args))
    if isinstance(f, (Brec, Cobrec, Neg)):
        return type(f)(flatten(f.arg))
    if isinstance(f, (Impl, Brimpl)):
        return type(f)(flatten(f.lhs), flatten(f.rhs))
    return f


def rename_atoms(f: Formula, mapping: Mapping[Atom, Atom]) -> Formula:
    """Simultaneously replace atoms per mapping; unmapped atoms are kept."""
    if isinstance(f, Literal):
        return Literal(mapping.get(f.atom, f.atom), f.negated)
    if isinstance(f, (TrueConst, FalseConst)):
        return f
    if isinstance(f, (Brec, Cobrec, Neg)):
        return type(f)(rename_atoms(f.arg, mapping))
    if isinstance(f, (Impl, Brimpl)):
        return type(f)(rename_atoms(f.lhs, mapping), rename_atoms(f.rhs, mapping))
    return type(f)(tuple(rename_atoms(arg, mapping) for arg in f.args))


def atoms(f: Formula) -> Tuple[Atom, ...]:
    """Distinct atoms in order of first occurrence"""
    seen = {}
    for node in walk(f):
        if isinstance(node, Literal):
            seen.setdefault(node.atom, None)
    return tuple(seen)


def literal_count(f: Formula) -> int:
    return sum(1 for node in walk(f) if isinstance(node, Literal))


def formula_size(f: Formula) -> int:
    return sum(1 for _ in walk(f))


def recurrence_complexity(f: Formula) -> int:
    """Number of ! and ? nodes"""
    return sum(1 for node in walk(f) if isinstance(node, RECURRENCE))
