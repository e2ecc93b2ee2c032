"""
CoL Toolkit - Constant Game Trees
=================================
Finite constant games as labeled move trees. Every node carries the winner
of the run that ends there; the set of root-to-node paths is the set of
legal runs.

Composite games are built the way the operators are defined: negation swaps
labels and winners, a choice combination opens with a bare "i" move by the
chooser, and a parallel combination interleaves component moves prefixed
with "i.".
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple

from src.logic.errors import IllegalPositionError


class Player(Enum):
    MACHINE = "T"
    ENVIRONMENT = "B"

    @property
    def opponent(self) -> "Player":
        return Player.ENVIRONMENT if self is Player.MACHINE else Player.MACHINE

    @property
    def symbol(self) -> str:
        return "⊤" if self is Player.MACHINE else "⊥"

    @classmethod
    def parse(cls, text: str) -> "Player":
        aliases = {"T": cls.MACHINE, "⊤": cls.MACHINE, "B": cls.ENVIRONMENT, "⊥": cls.ENVIRONMENT}
        try:
            return aliases[text]
        except KeyError:
            raise ValueError(f"unknown player {text!r}") from None


MACHINE = Player.MACHINE
ENVIRONMENT = Player.ENVIRONMENT


@dataclass(frozen=True)
class LabMove:
    player: Player
    move: str

    def __str__(self) -> str:
        return f"{self.player.symbol}{self.move}"

    def sort_key(self) -> Tuple[str, str]:
        return (self.player.value, self.move)


Run = Tuple[LabMove, ...]


def _edge_key(edge: Tuple[LabMove, "GameTree"]) -> Tuple[str, str]:
    return edge[0].sort_key()


@dataclass(frozen=True)
class GameTree:
    """Node of a finite game: winner of the run ending here plus outgoing moves"""

    winner: Player
    edges: Tuple[Tuple[LabMove, "GameTree"], ...] = ()

    def __post_init__(self):
        edges = tuple(sorted(self.edges, key=_edge_key))
        seen = set()
        for labmove, _ in edges:
            if labmove in seen:
                raise ValueError(f"duplicate move {labmove} at one node")
            seen.add(labmove)
        object.__setattr__(self, "edges", edges)

    def child(self, labmove: LabMove) -> Optional["GameTree"]:
        for edge, node in self.edges:
            if edge == labmove:
                return node
        return None

    def moves_for(self, player: Player) -> List[str]:
        return [edge.move for edge, _ in self.edges if edge.player is player]

    @property
    def is_leaf(self) -> bool:
        return not self.edges


@dataclass(frozen=True)
class Adjudication:
    legal: bool
    offender: Optional[Player]
    winner: Player


def elementary(winner: Player) -> GameTree:
    return GameTree(winner)


def negate(g: GameTree) -> GameTree:
    """Swap the roles of the players"""
    memo: Dict[int, GameTree] = {}

    def go(node: GameTree) -> GameTree:
        key = id(node)
        if key not in memo:
            memo[key] = GameTree(
                node.winner.opponent,
                tuple((LabMove(e.player.opponent, e.move), go(child)) for e, child in node.edges),
            )
        return memo[key]

    return go(g)


def choice(components: Sequence[GameTree], chooser: Player) -> GameTree:
    """The chooser picks component i with the bare move "i"; failing to choose loses."""
    if len(components) < 2:
        raise ValueError("a choice combination needs at least two components")
    return GameTree(
        chooser.opponent,
        tuple((LabMove(chooser, str(i)), component) for i, component in enumerate(components)),
    )


def parallel(components: Sequence[GameTree], conjunctive: bool) -> GameTree:
    """Interleaved product; the winner at a node combines the component winners."""
    if len(components) < 2:
        raise ValueError("a parallel combination needs at least two components")
    memo: Dict[Tuple[int, ...], GameTree] = {}

    def go(state: Tuple[GameTree, ...]) -> GameTree:
        key = tuple(id(node) for node in state)
        if key in memo:
            return memo[key]
        machine_wins = [node.winner is MACHINE for node in state]
        won = all(machine_wins) if conjunctive else any(machine_wins)
        edges = []
        for i, node in enumerate(state):
            for labmove, child in node.edges:
                successor = state[:i] + (child,) + state[i + 1:]
                edges.append((LabMove(labmove.player, f"{i}.{labmove.move}"), go(successor)))
        memo[key] = GameTree(MACHINE if won else ENVIRONMENT, tuple(edges))
        return memo[key]

    return go(tuple(components))


def adjudicate(g: GameTree, run: Sequence[LabMove]) -> Adjudication:
    """Winner of a run; an illegal run is lost by whoever made the first illegal move."""
    node = g
    for labmove in run:
        child = node.child(labmove)
        if child is None:
            return Adjudication(False, labmove.player, labmove.player.opponent)
        node = child
    return Adjudication(True, None, node.winner)


def prefixation(g: GameTree, position: Sequence[LabMove]) -> GameTree:
    """The game that remains after the given legal position"""
    node = g
    for index, labmove in enumerate(position):
        child = node.child(labmove)
        if child is None:
            raise IllegalPositionError(f"move {index} ({labmove}) is illegal in this position")
        node = child
    return node


def depth(g: GameTree) -> int:
    memo: Dict[int, int] = {}

    def go(node: GameTree) -> int:
        key = id(node)
        if key not in memo:
            memo[key] = 1 + max((go(child) for _, child in node.edges), default=-1)
        return memo[key]

    return go(g)


def move_alphabet(g: GameTree) -> Set[LabMove]:
    seen: Set[int] = set()
    alphabet: Set[LabMove] = set()
    stack = [g]
    while stack:
        node = stack.pop()
        if id(node) in seen:
            continue
        seen.add(id(node))
        for labmove, child in node.edges:
            alphabet.add(labmove)
            stack.append(child)
    return alphabet


def legal_runs(g: GameTree) -> Iterator[Run]:
    stack: List[Tuple[GameTree, Run]] = [(g, ())]
    while stack:
        node, run = stack.pop()
        yield run
        for labmove, child in reversed(node.edges):
            stack.append((child, run + (labmove,)))


def is_strict(g: GameTree) -> bool:
    """At most one player has legal moves in every position"""
    for run in legal_runs(g):
        node = prefixation(g, run)
        if node.moves_for(MACHINE) and node.moves_for(ENVIRONMENT):
            return False
    return True
