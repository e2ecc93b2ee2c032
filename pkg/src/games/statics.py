"""
CoL Toolkit - Delays and Static Games
=====================================
The delay relation on runs and a brute-force static-game test.

A run D is a p-delay of G when both players' move sequences are unchanged
and no move of p's adversary ends up later relative to p's moves than it
was in G. A game is static when delaying a player's moves never turns that
player's win into a loss or makes that player an offender.
"""
from __future__ import annotations

import itertools
import logging
from typing import Iterator, List, Sequence, Tuple

from src.games.game_tree import GameTree, LabMove, Player, Run, adjudicate, depth, move_alphabet
from src.logic.errors import ResourceExhausted

logger = logging.getLogger(__name__)

DEFAULT_RUN_BOUND = 200_000


def _split(run: Sequence[LabMove], p: Player) -> Tuple[List[LabMove], List[LabMove]]:
    return [lm for lm in run if lm.player is p], [lm for lm in run if lm.player is not p]


def _p_moves_before_each_other_move(run: Sequence[LabMove], p: Player) -> List[int]:
    counts, seen = [], 0
    for lm in run:
        if lm.player is p:
            seen += 1
        else:
            counts.append(seen)
    return counts


def is_delay(candidate: Sequence[LabMove], original: Sequence[LabMove], p: Player) -> bool:
    """Whether candidate is a p-delay of original"""
    if _split(candidate, p) != _split(original, p):
        return False
    before_candidate = _p_moves_before_each_other_move(candidate, p)
    before_original = _p_moves_before_each_other_move(original, p)
    return all(c <= o for c, o in zip(before_candidate, before_original))


def iter_delays(original: Sequence[LabMove], p: Player) -> Iterator[Run]:
    """Every p-delay of a run, the run itself included"""
    mine, theirs = _split(original, p)
    limits = _p_moves_before_each_other_move(original, p)

    def go(i: int, j: int, acc: Tuple[LabMove, ...]) -> Iterator[Run]:
        if i == len(mine) and j == len(theirs):
            yield acc
            return
        if j < len(theirs) and i <= limits[j]:
            yield from go(i, j + 1, acc + (theirs[j],))
        if i < len(mine):
            yield from go(i + 1, j, acc + (mine[i],))

    yield from go(0, 0, ())


def is_static(g: GameTree, run_bound: int = DEFAULT_RUN_BOUND) -> bool:
    """Brute-force check over all runs on the game's alphabet up to its depth."""
    alphabet = sorted(move_alphabet(g), key=LabMove.sort_key)
    horizon = depth(g)
    total = sum(len(alphabet) ** n for n in range(horizon + 1))
    if total > run_bound:
        raise ResourceExhausted(f"static check needs {total} runs, bound is {run_bound}")
    logger.debug("static check over %d runs", total)
    for length in range(horizon + 1):
        for run in itertools.product(alphabet, repeat=length):
            verdict = adjudicate(g, run)
            for p in Player:
                won = verdict.winner is p
                clean = verdict.offender is not p
                if not won and not clean:
                    continue
                for delayed in iter_delays(run, p):
                    other = adjudicate(g, delayed)
                    if won and other.winner is not p:
                        return False
                    if clean and other.offender is p:
                        return False
    return True
