"""
CoL Toolkit - Uniform Policy Oracle
===================================
Decides whether a single Machine policy wins a family of games that share
one move structure (for instance the games of one formula under every
elementary interpretation), against every Environment behaviour.

This is an AND-OR search over positions under the same Environment-first
scheduler that play_match uses, and is independent of the proof rules.
"""
from __future__ import annotations

import logging
from typing import Dict, Sequence, Tuple

from src.games.game_tree import ENVIRONMENT, MACHINE, GameTree, LabMove
from src.games.interpretation import elementary_interpretations, interpret
from src.logic.formula import Formula

logger = logging.getLogger(__name__)

State = Tuple[GameTree, ...]


def exists_uniform_policy(games: Sequence[GameTree]) -> bool:
    games = tuple(games)
    if not games:
        raise ValueError("need at least one game")
    step_memo: Dict[Tuple[int, ...], bool] = {}
    reply_memo: Dict[Tuple[Tuple[int, ...], bool], bool] = {}

    def advance(state: State, labmove: LabMove) -> State:
        successors = tuple(node.child(labmove) for node in state)
        if any(node is None for node in successors):
            raise ValueError(f"games disagree on the legality of {labmove}")
        return successors

    def step(state: State) -> bool:
        # Environment moves first: pass or any legal move
        key = tuple(id(node) for node in state)
        if key not in step_memo:
            options = [None] + state[0].moves_for(ENVIRONMENT)
            step_memo[key] = all(
                reply(state if move is None else advance(state, LabMove(ENVIRONMENT, move)), move is None)
                for move in options
            )
        return step_memo[key]

    def reply(state: State, environment_passed: bool) -> bool:
        key = (tuple(id(node) for node in state), environment_passed)
        if key not in reply_memo:
            if environment_passed:
                # both passing ends the match here
                won = all(node.winner is MACHINE for node in state)
            else:
                won = step(state)
            if not won:
                won = any(step(advance(state, LabMove(MACHINE, move))) for move in state[0].moves_for(MACHINE))
            reply_memo[key] = won
        return reply_memo[key]

    return step(games)


def uniformly_winnable(f: Formula) -> bool:
    """Brute-force reading of CL1 validity for a normalized elementary-atom formula"""
    games = [interpret(f, itp) for itp in elementary_interpretations(f)]
    return exists_uniform_policy(games)
