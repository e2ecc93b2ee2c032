"""
CoL Toolkit - Game Semantics
============================
Finite constant games for recurrence-free formulas: the semantic oracle the
provers are checked against.
"""
from src.games.catalogue import default_catalogue, game_from_json, game_to_json, run_from_json, run_to_json
from src.games.game_tree import (
    ENVIRONMENT,
    MACHINE,
    Adjudication,
    GameTree,
    LabMove,
    Player,
    adjudicate,
    choice,
    depth,
    elementary,
    is_strict,
    negate,
    parallel,
    prefixation,
)
from src.games.interpretation import Interpretation, elementary_interpretations, interpret
from src.games.matches import (
    MatchResult,
    Strategy,
    always_pass,
    copycat_strategy,
    find_counterexample,
    play_match,
    random_adversary,
    verify_strategy,
)
from src.games.oracle import exists_uniform_policy, uniformly_winnable
from src.games.statics import is_delay, is_static

__all__ = [
    "ENVIRONMENT", "MACHINE", "Adjudication", "GameTree", "Interpretation", "LabMove",
    "MatchResult", "Player", "Strategy", "adjudicate", "always_pass", "choice",
    "copycat_strategy", "default_catalogue", "depth", "elementary", "elementary_interpretations",
    "exists_uniform_policy", "find_counterexample", "game_from_json", "game_to_json",
    "interpret", "is_delay", "is_static", "is_strict", "negate", "parallel", "play_match",
    "prefixation", "random_adversary", "run_from_json", "run_to_json", "uniformly_winnable", "verify_strategy",
]
