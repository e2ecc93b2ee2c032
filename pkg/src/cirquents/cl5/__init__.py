"""
CoL Toolkit - CCC/CL5 Shallow Cirquents
=======================================
"""
from src.cirquents.cl5.ars import ArsResult, ars_valid
from src.cirquents.cl5.binary import decide, decide_binary, is_binary, is_normal_binary
from src.cirquents.cl5.cirquent import (
    EMPTY,
    ShallowCirquent,
    cirquent_from_json,
    cirquent_to_json,
    cirquent_true,
    ports,
    singleton,
    to_dot,
)
from src.cirquents.cl5.proofs import CL5Proof, CL5Step, check_proof, proof_from_json, proof_to_json
from src.cirquents.cl5.rules import CL5Rule, apply_rule, check_step
from src.cirquents.cl5.search import search_proof

__all__ = [
    "ArsResult", "CL5Proof", "CL5Rule", "CL5Step", "EMPTY", "ShallowCirquent",
    "apply_rule", "ars_valid", "check_proof", "check_step", "cirquent_from_json",
    "cirquent_to_json", "cirquent_true", "decide", "decide_binary", "is_binary",
    "is_normal_binary", "ports", "proof_from_json", "proof_to_json", "search_proof",
    "singleton", "to_dot",
]
