"""
CoL Toolkit - CL1/CL2 Brute-Force Prover
========================================
"""
from src.provers.bruteforce.decider import BruteForceDecider, decide
from src.provers.bruteforce.proofs import BFProof, BFStep, check_proof, proof_from_json, proof_to_json
from src.provers.bruteforce.rules import Rule2Detail, Rule3Detail, rule1_premises, rule2_premises, rule3_premises
from src.provers.bruteforce.strategy import ProofStrategy, extract_strategy

__all__ = [
    "BFProof", "BFStep", "BruteForceDecider", "ProofStrategy", "Rule2Detail", "Rule3Detail",
    "check_proof", "decide", "extract_strategy", "proof_from_json", "proof_to_json",
    "rule1_premises", "rule2_premises", "rule3_premises",
]
