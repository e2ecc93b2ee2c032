"""
CoL Toolkit - Game Catalogue
============================
Built-in strict test games and the JSON formats for games, interpretations
and run transcripts.

    node        {"winner": "T"|"B", "edges": [{"by": "T"|"B", "move": "...", "to": node}]}
    transcript  [{"by": "T"|"B", "move": "..."}]
    interp      {"p": "T", "P": "QUIZ", "Q": node}
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Sequence, Union

from src.games.game_tree import ENVIRONMENT, MACHINE, GameTree, LabMove, Player, Run
from src.games.interpretation import AtomValue, Interpretation
from src.logic.errors import SchemaError
from src.logic.formula import Atom


def _node(winner: Player, *edges) -> GameTree:
    return GameTree(winner, tuple((LabMove(by, move), child) for by, move, child in edges))


def default_catalogue() -> Dict[str, GameTree]:
    """Strict games of depth at most 2, keyed by name"""
    top, bottom = GameTree(MACHINE), GameTree(ENVIRONMENT)
    return {
        "T": top,
        "B": bottom,
        # Environment may pick; not picking loses for it
        "ENV_PICK": _node(MACHINE, (ENVIRONMENT, "0", top), (ENVIRONMENT, "1", bottom)),
        "MACH_PICK": _node(ENVIRONMENT, (MACHINE, "0", top), (MACHINE, "1", bottom)),
        # Environment asks a or b, the Machine must answer x for a and y for b
        "QUIZ": _node(
            MACHINE,
            (ENVIRONMENT, "a", _node(ENVIRONMENT, (MACHINE, "x", top), (MACHINE, "y", bottom))),
            (ENVIRONMENT, "b", _node(ENVIRONMENT, (MACHINE, "x", bottom), (MACHINE, "y", top))),
        ),
        # the Machine opens, then the Environment may refute with 1
        "DUEL": _node(
            ENVIRONMENT,
            (MACHINE, "0", _node(MACHINE, (ENVIRONMENT, "1", bottom), (ENVIRONMENT, "2", top))),
        ),
    }


def game_to_json(g: GameTree) -> Dict[str, Any]:
    return {
        "winner": g.winner.value,
        "edges": [{"by": lm.player.value, "move": lm.move, "to": game_to_json(child)} for lm, child in g.edges],
    }


def game_from_json(data: Any) -> GameTree:
    if not isinstance(data, dict) or "winner" not in data:
        raise SchemaError("game node must be an object with a 'winner'")
    try:
        winner = Player.parse(data["winner"])
        edges = tuple(
            (LabMove(Player.parse(edge["by"]), str(edge["move"])), game_from_json(edge["to"]))
            for edge in data.get("edges", [])
        )
        return GameTree(winner, edges)
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"malformed game node: {exc}") from exc


def run_to_json(run: Sequence[LabMove]) -> List[Dict[str, str]]:
    return [{"by": lm.player.value, "move": lm.move} for lm in run]


def run_from_json(data: Any) -> Run:
    try:
        return tuple(LabMove(Player.parse(item["by"]), str(item["move"])) for item in data)
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"malformed run transcript: {exc}") from exc


def load_catalogue(path: Union[str, Path]) -> Dict[str, GameTree]:
    """Catalogue file: {"name": node, ...}, merged over the built-in games"""
    catalogue = default_catalogue()
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError(f"cannot read catalogue {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise SchemaError("catalogue must be a JSON object")
    catalogue.update({name: game_from_json(node) for name, node in data.items()})
    return catalogue


def interpretation_from_json(data: Any, catalogue: Optional[Mapping[str, GameTree]] = None) -> Interpretation:
    catalogue = catalogue if catalogue is not None else default_catalogue()
    if not isinstance(data, dict):
        raise SchemaError("interpretation must be a JSON object")
    values: Dict[Atom, AtomValue] = {}
    for name, value in data.items():
        try:
            atom = Atom(name)
        except ValueError as exc:
            raise SchemaError(str(exc)) from exc
        if isinstance(value, dict):
            values[atom] = game_from_json(value)
        elif value in ("T", "B", "⊤", "⊥") and not atom.is_general:
            values[atom] = Player.parse(value)
        elif value in catalogue:
            values[atom] = catalogue[value]
        else:
            raise SchemaError(f"atom {name}: unknown game {value!r}")
    return Interpretation(values)


def load_interpretation(path: Union[str, Path], catalogue: Optional[Mapping[str, GameTree]] = None) -> Interpretation:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError(f"cannot read interpretation {path}: {exc}") from exc
    return interpretation_from_json(data, catalogue)
