"""
CoL Toolkit - Matches and Strategy Verification
===============================================
Positional strategies, a deterministic scheduler and the exhaustive
adversary used as the semantic oracle for extracted strategies.

Scheduling: each step offers the position to the Environment first and then
to the Machine; either may pass. A match ends when both pass in the same step
or when the step limit is reached. A strategy that makes an illegal move ends
the match at once and loses it.
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from typing import Callable, Iterator, List, Optional, Sequence, Tuple

from src.games.game_tree import (
    ENVIRONMENT,
    MACHINE,
    GameTree,
    LabMove,
    Player,
    Run,
    depth,
    prefixation,
)
from src.logic.errors import IllegalPositionError

logger = logging.getLogger(__name__)


class Strategy:
    """Deterministic move policy: position -> move or None (pass)"""

    name = "strategy"

    def __call__(self, position: Run) -> Optional[str]:
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}>"


class PolicyStrategy(Strategy):
    def __init__(self, policy: Callable[[Run], Optional[str]], name: str = "policy"):
        self.policy = policy
        self.name = name

    def __call__(self, position: Run) -> Optional[str]:
        return self.policy(position)


class AlwaysPass(Strategy):
    name = "always-pass"

    def __call__(self, position: Run) -> Optional[str]:
        return None


def always_pass() -> Strategy:
    return AlwaysPass()


def project(position: Sequence[LabMove], prefix: str) -> List[LabMove]:
    """Moves inside the subgame addressed by prefix, with the prefix removed"""
    return [LabMove(lm.player, lm.move[len(prefix):]) for lm in position if lm.move.startswith(prefix)]


def copycat_reply(position: Sequence[LabMove], prefix_a: str, prefix_b: str, player: Player = MACHINE) -> Optional[str]:
    """Next move that keeps subgame b a mirror of subgame a and vice versa.

    The owner's k-th move in one subgame answers the adversary's k-th move in
    the other, so the reply depends on the position alone.
    """
    side_a = project(position, prefix_a)
    side_b = project(position, prefix_b)
    theirs_a = [lm.move for lm in side_a if lm.player is not player]
    theirs_b = [lm.move for lm in side_b if lm.player is not player]
    mine_a = [lm.move for lm in side_a if lm.player is player]
    mine_b = [lm.move for lm in side_b if lm.player is player]
    if len(theirs_a) > len(mine_b):
        return prefix_b + theirs_a[len(mine_b)]
    if len(theirs_b) > len(mine_a):
        return prefix_a + theirs_b[len(mine_a)]
    return None


class CopycatStrategy(Strategy):
    """Mirror every adversary move across two subgames"""

    def __init__(self, left: str = "0.", right: str = "1.", player: Player = MACHINE):
        self.left = left
        self.right = right
        self.player = player
        self.name = f"copycat({left},{right})"

    def __call__(self, position: Run) -> Optional[str]:
        return copycat_reply(position, self.left, self.right, self.player)


def copycat_strategy(left: str = "0.", right: str = "1.") -> Strategy:
    return CopycatStrategy(left, right)


class ScriptedStrategy(Strategy):
    """Plays its k-th scripted move once it has made k moves, then passes."""

    def __init__(self, moves: Sequence[str], player: Player = ENVIRONMENT):
        self.moves = list(moves)
        self.player = player
        self.name = f"scripted{self.moves}"

    def __call__(self, position: Run) -> Optional[str]:
        made = sum(1 for lm in position if lm.player is self.player)
        return self.moves[made] if made < len(self.moves) else None


class RandomAdversary(Strategy):
    """Seeded random legal play; the choice is a function of seed and position."""

    def __init__(self, game: GameTree, seed: int, player: Player = ENVIRONMENT, pass_weight: float = 0.3):
        self.game = game
        self.seed = seed
        self.player = player
        self.pass_weight = pass_weight
        self.name = f"random(seed={seed})"

    def __call__(self, position: Run) -> Optional[str]:
        try:
            node = prefixation(self.game, position)
        except IllegalPositionError:
            return None
        options = node.moves_for(self.player)
        rng = random.Random(f"{self.seed}:{'/'.join(str(lm) for lm in position)}")
        if not options or rng.random() < self.pass_weight:
            return None
        return rng.choice(options)


def random_adversary(game: GameTree, seed: int) -> Strategy:
    return RandomAdversary(game, seed)


@dataclass(frozen=True)
class MatchResult:
    run: Run
    winner: Player
    offender: Optional[Player] = None

    @property
    def legal(self) -> bool:
        return self.offender is None


def play_match(g: GameTree, machine: Strategy, environment: Strategy, max_steps: Optional[int] = None) -> MatchResult:
    """Run one scheduled match and adjudicate it."""
    limit = max_steps if max_steps is not None else depth(g) + 1
    run: List[LabMove] = []
    node = g
    for _ in range(limit):
        passes = 0
        for player, strategy in ((ENVIRONMENT, environment), (MACHINE, machine)):
            move = strategy(tuple(run))
            if move is None:
                passes += 1
                continue
            labmove = LabMove(player, move)
            run.append(labmove)
            child = node.child(labmove)
            if child is None:
                logger.debug("illegal move %s ends the match", labmove)
                return MatchResult(tuple(run), player.opponent, player)
            node = child
        if passes == 2:
            break
    return MatchResult(tuple(run), node.winner)


def find_counterexample(g: GameTree, machine: Strategy) -> Optional[MatchResult]:
    """A match the strategy loses against some Environment behaviour, if any.

    Every scheduler step branches over the Environment passing or making any
    of its legal moves; the tree is finite, so the enumeration terminates.
    """
    stack: List[Tuple[GameTree, Run]] = [(g, ())]
    while stack:
        node, run = stack.pop()
        options: List[Optional[str]] = [None] + node.moves_for(ENVIRONMENT)
        for option in options:
            current, played = node, run
            if option is not None:
                labmove = LabMove(ENVIRONMENT, option)
                current, played = current.child(labmove), played + (labmove,)
            reply = machine(played)
            if reply is not None:
                labmove = LabMove(MACHINE, reply)
                child = current.child(labmove)
                if child is None:
                    return MatchResult(played + (labmove,), ENVIRONMENT, MACHINE)
                stack.append((child, played + (labmove,)))
            elif option is None:
                if current.winner is not MACHINE:
                    return MatchResult(played, current.winner)
            else:
                stack.append((current, played))
    return None


def verify_strategy(g: GameTree, machine: Strategy) -> bool:
    """True iff every run the strategy can produce against any adversary is won by the Machine."""
    counterexample = find_counterexample(g, machine)
    if counterexample is not None:
        logger.debug("strategy %r loses on %s", machine, [str(lm) for lm in counterexample.run])
    return counterexample is None


def iter_adversaries(g: GameTree, seeds: Sequence[int] = (0, 1, 2)) -> Iterator[Strategy]:
    """A small fixed panel of Environment behaviours for smoke matches"""
    yield AlwaysPass()
    for seed in seeds:
        yield random_adversary(g, seed)
