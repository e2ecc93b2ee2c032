"""
CoL Toolkit - Engine Dispatch
=============================
Picks the prover, oracle or checker for a system and feeds it the
configured budgets.
"""
from __future__ import annotations

import json
from dataclasses import asdict
from pathlib import Path
from typing import Any, Tuple, Union

from src.cirquents.cl5 import binary
from src.cirquents.cl5.ars import ars_valid
from src.cirquents.cl5.cirquent import singleton
from src.cirquents.cl5.proofs import check_proof as check_cl5
from src.cirquents.cl5.proofs import proof_from_json as cl5_from_json
from src.cirquents.cl5.search import search_proof
from src.cirquents.cl15.proofs import check_proof as check_cl15
from src.cirquents.cl15.proofs import proof_from_json as cl15_from_json
from src.cirquents.cl15.search import CL15Decider, SearchConfig
from src.logic.errors import LanguageGateError, SchemaError
from src.logic.formula import Formula, SystemId
from src.logic.verdicts import CheckResult, Verdict
from src.provers.bruteforce.decider import BruteForceDecider
from src.provers.bruteforce.proofs import check_proof as check_bf
from src.provers.bruteforce.proofs import proof_from_json as bf_from_json
from src.settings import Settings

BRUTE_FORCE = (SystemId.CL1, SystemId.CL2)
SHALLOW = (SystemId.CCC, SystemId.CL5)


def cl15_config(settings: Settings) -> SearchConfig:
    return SearchConfig(**asdict(settings.cl15))


def prove(f: Formula, system: SystemId, settings: Settings) -> Verdict:
    if system in BRUTE_FORCE:
        bf = settings.bruteforce
        return BruteForceDecider(system, bf.max_nodes, bf.timeout_ms).decide(f)
    if system in SHALLOW:
        return search_proof(f, system, settings.cl5.search_max_nodes, settings.cl5.search_timeout_ms)
    return CL15Decider(cl15_config(settings)).decide(f)


def oracle(f: Formula, system: SystemId, settings: Settings, method: str = "binary") -> Tuple[bool, Any]:
    """Truth of f by a CCC/CL5 semantic oracle, with a witness where one exists."""
    if system not in SHALLOW:
        raise LanguageGateError(system.value, "no semantic oracle; use the prover")
    if method == "ars" and system is SystemId.CL5:
        result = ars_valid(singleton(f), settings.cl5.ars_port_bound)
        witness = None
        if result.witness is not None:
            witness = sorted([[pos, list(path)] for pos, path in pair] for pair in result.witness)
        return result.valid, witness
    if method not in ("binary", "ars"):
        raise ValueError(f"unknown oracle {method!r}")
    return binary.decide(f, system, settings.cl5.binary_occurrence_bound), None


def load_proof(path: Union[str, Path]) -> Tuple[SystemId, Any]:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError(f"cannot read proof file {path}: {exc}") from exc
    if not isinstance(data, dict) or "system" not in data:
        raise SchemaError("proof file must be an object with a 'system'")
    try:
        system = SystemId.parse(str(data["system"]))
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc
    if system in BRUTE_FORCE:
        return system, bf_from_json(data)
    if system in SHALLOW:
        return system, cl5_from_json(data)
    return system, cl15_from_json(data)


def check(system: SystemId, proof: Any) -> CheckResult:
    if system in BRUTE_FORCE:
        return check_bf(proof)
    if system in SHALLOW:
        return check_cl5(proof)
    return check_cl15(proof)

