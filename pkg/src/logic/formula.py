"""
CoL Toolkit - Formula Language
==============================
Abstract syntax for propositional Computability Logic formulas: elementary
and general atoms, the parallel and choice connectives, branching
(co)recurrence, plus the sugar nodes that only survive until normalization.

Atom kind follows capitalization: lowercase names are elementary atoms,
uppercase names are general atoms.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Tuple

from src.logic.errors import LanguageGateError


class AtomKind(Enum):
    ELEMENTARY = "elementary"
    GENERAL = "general"


@dataclass(frozen=True, order=True)
class Atom:
    name: str
    kind: AtomKind = field(default=None, compare=False)  # type: ignore[assignment]

    def __post_init__(self):
        if not self.name or not self.name[0].isalpha():
            raise ValueError(f"atom name must start with a letter: {self.name!r}")
        inferred = AtomKind.ELEMENTARY if self.name[0].islower() else AtomKind.GENERAL
        if self.kind is None:
            object.__setattr__(self, "kind", inferred)
        elif self.kind is not inferred:
            raise ValueError(f"atom {self.name!r} cannot be {self.kind.value}")

    @property
    def is_general(self) -> bool:
        return self.kind is AtomKind.GENERAL


class Formula:
    """Base of every AST node. Nodes are immutable and compare structurally."""

    def children(self) -> Tuple["Formula", ...]:
        return ()

    def __str__(self) -> str:
        from src.logic.parsers.formula_parser import render

        return render(self)


@dataclass(frozen=True)
class TrueConst(Formula):
    pass


@dataclass(frozen=True)
class FalseConst(Formula):
    pass


@dataclass(frozen=True)
class Literal(Formula):
    atom: Atom
    negated: bool = False

    def flipped(self) -> "Literal":
        return Literal(self.atom, not self.negated)


@dataclass(frozen=True)
class _Nary(Formula):
    args: Tuple[Formula, ...]

    def __post_init__(self):
        args = tuple(self.args)
        if len(args) < 2:
            raise ValueError(f"{type(self).__name__} needs at least two arguments")
        object.__setattr__(self, "args", args)

    def children(self) -> Tuple[Formula, ...]:
        return self.args


@dataclass(frozen=True)
class Pand(_Nary):
    """Parallel conjunction"""


@dataclass(frozen=True)
class Por(_Nary):
    """Parallel disjunction"""


@dataclass(frozen=True)
class Chand(_Nary):
    """Choice conjunction"""


@dataclass(frozen=True)
class Chor(_Nary):
    """Choice disjunction"""


@dataclass(frozen=True)
class Brec(Formula):
    """Branching recurrence"""

    arg: Formula

    def children(self) -> Tuple[Formula, ...]:
        return (self.arg,)


@dataclass(frozen=True)
class Cobrec(Formula):
    """Branching corecurrence"""

    arg: Formula

    def children(self) -> Tuple[Formula, ...]:
        return (self.arg,)


# Sugar: removed by normalize()


@dataclass(frozen=True)
class Neg(Formula):
    arg: Formula

    def children(self) -> Tuple[Formula, ...]:
        return (self.arg,)


@dataclass(frozen=True)
class Impl(Formula):
    lhs: Formula
    rhs: Formula

    def children(self) -> Tuple[Formula, ...]:
        return (self.lhs, self.rhs)


@dataclass(frozen=True)
class Brimpl(Formula):
    """Branching-recurrence implication, F o-> G"""

    lhs: Formula
    rhs: Formula

    def children(self) -> Tuple[Formula, ...]:
        return (self.lhs, self.rhs)


TOP = TrueConst()
BOTTOM = FalseConst()

PARALLEL = (Pand, Por)
CHOICE = (Chand, Chor)
RECURRENCE = (Brec, Cobrec)
SUGAR = (Neg, Impl, Brimpl)


def lit(name: str, negated: bool = False) -> Literal:
    return Literal(Atom(name), negated)


class ConnectiveKind(Enum):
    PAND = Pand
    POR = Por
    CHAND = Chand
    CHOR = Chor
    BREC = Brec
    COBREC = Cobrec

    def matches(self, f: Formula) -> bool:
        return type(f) is self.value


class SystemId(Enum):
    CL1 = "cl1"
    CL2 = "cl2"
    CCC = "ccc"
    CL5 = "cl5"
    CL15 = "cl15"

    @classmethod
    def parse(cls, text: str) -> "SystemId":
        try:
            return cls(text.strip().lower())
        except ValueError:
            choices = ", ".join(s.value for s in cls)
            raise ValueError(f"unknown system {text!r} (expected one of {choices})") from None


_SIGNATURES = {
    SystemId.CL1: (Pand, Por, Chand, Chor),
    SystemId.CL2: (Pand, Por, Chand, Chor),
    SystemId.CCC: (Pand, Por),
    SystemId.CL5: (Pand, Por),
    SystemId.CL15: (Pand, Por, Brec, Cobrec),
}


def walk(f: Formula) -> Iterator[Formula]:
    """Preorder traversal of every node"""
    stack = [f]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node.children()))


def check_language(f: Formula, system: SystemId) -> None:
    """Raise LanguageGateError unless normalized f lies in the system's language."""
    allowed = _SIGNATURES[system]
    for node in walk(f):
        if isinstance(node, SUGAR):
            raise LanguageGateError(system.value, f"formula is not normalized ({type(node).__name__} node)")
        if isinstance(node, (TrueConst, FalseConst)):
            if system in (SystemId.CCC, SystemId.CL5, SystemId.CL15):
                raise LanguageGateError(system.value, "constants are not part of the language")
            continue
        if isinstance(node, Literal):
            if system is SystemId.CL1 and node.atom.is_general:
                raise LanguageGateError(system.value, f"general atom {node.atom.name} not allowed")
            if system is SystemId.CL15 and not node.atom.is_general:
                raise LanguageGateError(system.value, f"elementary atom {node.atom.name} not allowed")
            continue
        if not isinstance(node, allowed):
            raise LanguageGateError(system.value, f"connective {type(node).__name__} not allowed")


def is_recurrence_free(f: Formula) -> bool:
    return not any(isinstance(node, RECURRENCE + (Brimpl,)) for node in walk(f))
