"""
CoL Toolkit - Occurrences
=========================
Sites (paths into a formula tree) with their surface and semisurface flags,
plus path-based lookup, replacement and move addressing.

A site is surface when no ancestor is a choice or recurrence connective, and
semisurface when no ancestor is a choice connective.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

from src.logic.formula import (
    CHOICE,
    RECURRENCE,
    Brec,
    Brimpl,
    Cobrec,
    ConnectiveKind,
    Formula,
    Impl,
    Literal,
    Neg,
    Pand,
    Por,
)

Path = Tuple[int, ...]


@dataclass(frozen=True)
class Site:
    path: Path
    subformula: Formula
    surface: bool
    semisurface: bool


def iter_sites(f: Formula) -> Iterator[Site]:
    """Every node of f in preorder, which is lexicographic path order."""
    stack: List[Tuple[Formula, Path, bool, bool]] = [(f, (), True, True)]
    while stack:
        node, path, surface, semisurface = stack.pop()
        yield Site(path, node, surface, semisurface)
        children = node.children()
        pending = []
        for i, child in enumerate(children):
            child_surface = surface and not isinstance(node, CHOICE + RECURRENCE)
            if isinstance(node, Brimpl) and i == 0:
                child_surface = False
            child_semisurface = semisurface and not isinstance(node, CHOICE)
            pending.append((child, path + (i,), child_surface, child_semisurface))
        stack.extend(reversed(pending))


def surface_sites(f: Formula, kind: Optional[ConnectiveKind] = None) -> List[Site]:
    """Occurrences of the given connective kind (all nodes if None) with flags."""
    return [site for site in iter_sites(f) if kind is None or kind.matches(site.subformula)]


def literal_sites(f: Formula, surface_only: bool = False) -> List[Site]:
    return [
        site
        for site in iter_sites(f)
        if isinstance(site.subformula, Literal) and (site.surface or not surface_only)
    ]


def subformula_at(f: Formula, path: Sequence[int]) -> Formula:
    node = f
    for index in path:
        children = node.children()
        if not 0 <= index < len(children):
            raise IndexError(f"path {tuple(path)} leaves the formula at index {index}")
        node = children[index]
    return node


def replace_at(f: Formula, path: Sequence[int], replacement: Formula) -> Formula:
    """Copy of f with the subformula at path replaced"""
    if not path:
        return replacement
    head, rest = path[0], path[1:]
    children = list(f.children())
    if not 0 <= head < len(children):
        raise IndexError(f"path index {head} out of range")
    children[head] = replace_at(children[head], rest, replacement)
    if isinstance(f, (Brec, Cobrec, Neg)):
        return type(f)(children[0])
    if isinstance(f, (Impl, Brimpl)):
        return type(f)(children[0], children[1])
    return type(f)(tuple(children))


def move_prefix(f: Formula, path: Sequence[int]) -> str:
    """Move prefix addressing the site at path in the game of f.

    Each parallel ancestor contributes "i."; choice ancestors contribute
    nothing (after the choice the game continues as the component itself).
    """
    prefix = []
    node = f
    for index in path:
        if isinstance(node, (Pand, Por)):
            prefix.append(f"{index}.")
        node = node.children()[index]
    return "".join(prefix)
