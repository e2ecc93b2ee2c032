"""
CoL Toolkit - Strategies from Brute-Force Proofs
================================================
Reads a Machine policy off a CL1/CL2 proof. The policy replays the visible
run against the proof, starting at the final step:

- a Rule 2 step owes the Machine's choice at the recorded site;
- at a Rule 1 step an Environment choice at a surface "*" site moves to the
  matching premise (choices made earlier are queued until a Rule 1 step);
- a Rule 3 step installs a copycat between the two paired literals.

Choice moves consumed by the replay are not part of any literal subgame, so
the copycats only see the remaining moves.

Everything is recomputed from the position on each call, so the policy is a
function of the position alone.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Set, Tuple

from src.games.game_tree import MACHINE, Run
from src.games.matches import Strategy, copycat_reply
from src.logic.errors import LanguageGateError
from src.logic.formula import ConnectiveKind, is_recurrence_free
from src.logic.occurrences import move_prefix, replace_at, surface_sites
from src.provers.bruteforce.proofs import BFProof
from src.provers.bruteforce.rules import Rule2Detail, Rule3Detail


@dataclass
class _Replay:
    step: int
    pending: List[Tuple[int, str]] = field(default_factory=list)
    consumed: Set[int] = field(default_factory=set)
    copycats: List[Tuple[str, str]] = field(default_factory=list)


class ProofStrategy(Strategy):
    """Positional Machine policy extracted from a brute-force proof"""

    def __init__(self, proof: BFProof):
        self.proof = proof
        self.name = f"proof-strategy({len(proof.steps)} steps)"

    def __call__(self, position: Run) -> Optional[str]:
        state = self._replay(position)
        step = self.proof.steps[state.step]
        if step.rule == "R2":
            return self._choice_move(state.step)
        visible = tuple(lm for i, lm in enumerate(position) if i not in state.consumed)
        for left, right in state.copycats:
            reply = copycat_reply(visible, left, right, MACHINE)
            if reply is not None:
                return reply
        return None

    def _choice_move(self, index: int) -> str:
        step = self.proof.steps[index]
        detail: Rule2Detail = step.detail
        return move_prefix(step.formula, detail.path) + str(detail.component)

    def _replay(self, position: Run) -> _Replay:
        state = _Replay(len(self.proof.steps) - 1)
        self._settle(state)
        for index, labmove in enumerate(position):
            step = self.proof.steps[state.step]
            if labmove.player is MACHINE:
                if step.rule == "R2" and labmove.move == self._choice_move(state.step):
                    state.consumed.add(index)
                    state.step = step.premises[0]
            elif self._environment_choice(state.step, labmove.move) is not None or step.rule != "R1":
                state.pending.append((index, labmove.move))
            self._settle(state)
        return state

    def _environment_choice(self, index: int, move: str) -> Optional[int]:
        """Premise step reached when the Environment plays move at a surface "*" site"""
        step = self.proof.steps[index]
        if step.rule != "R1":
            return None
        for site in surface_sites(step.formula, ConnectiveKind.CHAND):
            if not site.surface:
                continue
            prefix = move_prefix(step.formula, site.path)
            if not move.startswith(prefix):
                continue
            choice = move[len(prefix):]
            if not choice.isdigit() or int(choice) >= len(site.subformula.args):
                continue
            premise = replace_at(step.formula, site.path, site.subformula.args[int(choice)])
            for p in step.premises:
                if self.proof.steps[p].formula == premise:
                    return p
        return None

    def _settle(self, state: _Replay) -> None:
        while True:
            step = self.proof.steps[state.step]
            if step.rule == "R3":
                detail: Rule3Detail = step.detail
                state.copycats.append(
                    (move_prefix(step.formula, detail.positive), move_prefix(step.formula, detail.negative))
                )
                state.step = step.premises[0]
                continue
            if step.rule == "R1" and state.pending:
                for i, (index, move) in enumerate(state.pending):
                    target = self._environment_choice(state.step, move)
                    if target is not None:
                        del state.pending[i]
                        state.consumed.add(index)
                        state.step = target
                        break
                else:
                    return
                continue
            return


def extract_strategy(proof: BFProof) -> ProofStrategy:
    if not is_recurrence_free(proof.target):
        raise LanguageGateError(proof.system.value, "strategies are only extracted for recurrence-free targets")
    return ProofStrategy(proof)
