"""
CoL Toolkit - CL15 Cirquent Engine
==================================
"""
from src.cirquents.cl15.canonical import canonical_key, essentially_identical
from src.cirquents.cl15.cirquent import (
    Cirquent15,
    axiom,
    axiom_match,
    cirquent_from_json,
    cirquent_to_json,
    complexity,
    formula_to_target,
    to_dot,
)
from src.cirquents.cl15.closure import ClosureWitness, expand_closure, find_closure
from src.cirquents.cl15.proofs import CL15Proof, CL15Step, check_proof, proof_from_json, proof_to_json
from src.cirquents.cl15.rules import TAGS, CL15Rule, apply_forward, enumerate_premises, rule
from src.cirquents.cl15.search import CL15Decider, SearchConfig, SearchMode, decide

__all__ = [
    "CL15Decider", "CL15Proof", "CL15Rule", "CL15Step", "Cirquent15", "ClosureWitness",
    "SearchConfig", "SearchMode", "TAGS", "apply_forward", "axiom", "axiom_match",
    "canonical_key", "check_proof", "cirquent_from_json", "cirquent_to_json", "complexity",
    "decide", "enumerate_premises", "essentially_identical", "expand_closure", "find_closure",
    "formula_to_target", "proof_from_json", "proof_to_json", "rule", "to_dot",
]
