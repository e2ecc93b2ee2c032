"""
CoL Toolkit - Interpretations
=============================
Atom-to-game assignments and the compositional game construction for
recurrence-free formulas.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, Iterator, Mapping, Sequence, Union

from src.games.game_tree import ENVIRONMENT, MACHINE, GameTree, Player, choice, elementary, negate, parallel
from src.logic.errors import LanguageGateError, UnmappedAtomError
from src.logic.formula import Atom, Chand, Chor, FalseConst, Formula, Literal, Pand, Por, TrueConst
from src.logic.normalizer import atoms, is_normalized

AtomValue = Union[Player, GameTree]


@dataclass(frozen=True)
class Interpretation:
    """Elementary atoms go to a player (the winner), general atoms to a game."""

    values: Mapping[Atom, AtomValue] = field(default_factory=dict)

    def game_for(self, atom: Atom) -> GameTree:
        if atom not in self.values:
            raise UnmappedAtomError(f"atom {atom.name} is not interpreted")
        value = self.values[atom]
        if isinstance(value, Player):
            return elementary(value)
        if not atom.is_general and not value.is_leaf:
            raise LanguageGateError("interpretation", f"elementary atom {atom.name} must denote a moveless game")
        return value

    def describe(self) -> Dict[str, str]:
        out = {}
        for atom, value in sorted(self.values.items()):
            out[atom.name] = value.value if isinstance(value, Player) else "<game>"
        return out


def interpret(f: Formula, itp: Interpretation) -> GameTree:
    """Game denoted by a normalized recurrence-free formula"""
    if not is_normalized(f):
        raise LanguageGateError("games", "formula must be normalized before interpretation")
    memo: Dict[Atom, GameTree] = {}

    def atom_game(atom: Atom) -> GameTree:
        if atom not in memo:
            memo[atom] = itp.game_for(atom)
        return memo[atom]

    def go(node: Formula) -> GameTree:
        if isinstance(node, TrueConst):
            return elementary(MACHINE)
        if isinstance(node, FalseConst):
            return elementary(ENVIRONMENT)
        if isinstance(node, Literal):
            game = atom_game(node.atom)
            return negate(game) if node.negated else game
        if isinstance(node, Chand):
            return choice([go(arg) for arg in node.args], ENVIRONMENT)
        if isinstance(node, Chor):
            return choice([go(arg) for arg in node.args], MACHINE)
        if isinstance(node, Pand):
            return parallel([go(arg) for arg in node.args], conjunctive=True)
        if isinstance(node, Por):
            return parallel([go(arg) for arg in node.args], conjunctive=False)
        raise LanguageGateError("games", f"{type(node).__name__} has no finite game semantics here")

    return go(f)


def elementary_interpretations(f: Formula) -> Iterator[Interpretation]:
    """Every assignment of winners to the elementary atoms of f"""
    names = [atom for atom in atoms(f) if not atom.is_general]
    for bits in itertools.product((MACHINE, ENVIRONMENT), repeat=len(names)):
        yield Interpretation(dict(zip(names, bits)))


def catalogue_interpretations(
    f: Formula, catalogue: Mapping[str, GameTree], games_per_atom: Sequence[str] = ()
) -> Iterator[Interpretation]:
    """Elementary atoms over both winners, general atoms over catalogue games"""
    elementary_atoms = [atom for atom in atoms(f) if not atom.is_general]
    general_atoms = [atom for atom in atoms(f) if atom.is_general]
    names = list(games_per_atom) or sorted(catalogue)
    for bits in itertools.product((MACHINE, ENVIRONMENT), repeat=len(elementary_atoms)):
        for games in itertools.product(names, repeat=len(general_atoms)):
            values: Dict[Atom, AtomValue] = dict(zip(elementary_atoms, bits))
            values.update({atom: catalogue[name] for atom, name in zip(general_atoms, games)})
            yield Interpretation(values)
