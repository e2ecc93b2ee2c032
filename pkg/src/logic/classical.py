"""
CoL Toolkit - Classical Evaluation
==================================
Gate-by-gate evaluation, numpy truth tables, elementarisation and stability.
"""
from __future__ import annotations

import logging
from typing import Mapping, Optional, Sequence

import numpy as np

from src.logic.errors import LanguageGateError, ResourceExhausted
from src.logic.formula import (
    Atom,
    Chand,
    Chor,
    FalseConst,
    Formula,
    Literal,
    Pand,
    Por,
    TrueConst,
    walk,
)
from src.logic.normalizer import atoms

logger = logging.getLogger(__name__)

# 2**22 rows of booleans per column is the most we are willing to allocate
MAX_TABLE_ATOMS = 22

_CLASSICAL = (TrueConst, FalseConst, Literal, Pand, Por)


def is_classical(f: Formula) -> bool:
    """Only constants, literals, & and | (atoms of either kind)"""
    return all(isinstance(node, _CLASSICAL) for node in walk(f))


def is_elementary(f: Formula) -> bool:
    return all(
        isinstance(node, _CLASSICAL) and not (isinstance(node, Literal) and node.atom.is_general)
        for node in walk(f)
    )


def eval_classical(f: Formula, assignment: Mapping[Atom, bool]) -> bool:
    if isinstance(f, TrueConst):
        return True
    if isinstance(f, FalseConst):
        return False
    if isinstance(f, Literal):
        return assignment[f.atom] != f.negated
    if isinstance(f, Pand):
        return all(eval_classical(arg, assignment) for arg in f.args)
    if isinstance(f, Por):
        return any(eval_classical(arg, assignment) for arg in f.args)
    raise LanguageGateError("classical", f"cannot evaluate {type(f).__name__}")


def eval_elementary(f: Formula, assignment: Mapping[Atom, bool]) -> bool:
    """Classical truth value of an elementary formula"""
    if not is_elementary(f):
        raise LanguageGateError("elementary", "formula is not elementary")
    return eval_classical(f, assignment)


def truth_table(f: Formula, order: Optional[Sequence[Atom]] = None) -> np.ndarray:
    """Value of f on every assignment; row r sets atom k to bit k of r."""
    order = tuple(order) if order is not None else atoms(f)
    if len(order) > MAX_TABLE_ATOMS:
        raise ResourceExhausted(f"truth table over {len(order)} atoms exceeds {MAX_TABLE_ATOMS}")
    rows = np.arange(2 ** len(order), dtype=np.int64)
    columns = {atom: ((rows >> k) & 1).astype(bool) for k, atom in enumerate(order)}
    return _vector_eval(f, columns, rows.shape[0])


def _vector_eval(f: Formula, columns: Mapping[Atom, np.ndarray], size: int) -> np.ndarray:
    if isinstance(f, TrueConst):
        return np.ones(size, dtype=bool)
    if isinstance(f, FalseConst):
        return np.zeros(size, dtype=bool)
    if isinstance(f, Literal):
        column = columns[f.atom]
        return ~column if f.negated else column
    if isinstance(f, (Pand, Por)):
        parts = [_vector_eval(arg, columns, size) for arg in f.args]
        reduce = np.logical_and.reduce if isinstance(f, Pand) else np.logical_or.reduce
        return reduce(parts)
    raise LanguageGateError("classical", f"cannot evaluate {type(f).__name__}")


def is_tautology(f: Formula) -> bool:
    return bool(truth_table(f).all())


def elementarise(f: Formula) -> Formula:
    """Surface * to 1, surface + to 0, every general literal to 0."""
    for node in walk(f):
        if not isinstance(node, _CLASSICAL + (Chand, Chor)):
            raise LanguageGateError("elementarise", f"{type(node).__name__} is outside the CL1/CL2 signature")
    return _elementarise(f)


def _elementarise(f: Formula) -> Formula:
    if isinstance(f, Chand):
        return TrueConst()
    if isinstance(f, Chor):
        return FalseConst()
    if isinstance(f, Literal) and f.atom.is_general:
        return FalseConst()
    if isinstance(f, (Pand, Por)):
        return type(f)(tuple(_elementarise(arg) for arg in f.args))
    return f


def is_stable(f: Formula) -> bool:
    return is_tautology(elementarise(f))
