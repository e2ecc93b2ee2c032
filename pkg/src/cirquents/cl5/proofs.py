"""
CoL Toolkit - CCC/CL5 Proofs
============================
A proof is a list of steps, each recording its conclusion cirquent, the rule
with its parameters and the indices of earlier steps used as premises. The
last step must conclude the singleton cirquent of the target.

    {"system": "ccc"|"cl5", "target": "...",
     "steps": [{"cirquent": {"pool": [...], "groups": [[...]]},
                "rule": "or-intro", "params": {"index": 0}, "premises": [3]}]}
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

from src.cirquents.cl5.cirquent import ShallowCirquent, cirquent_from_json, cirquent_to_json, singleton
from src.cirquents.cl5.rules import CL5Rule, check_step
from src.logic.errors import CoLError, SchemaError
from src.logic.formula import Formula, SystemId, check_language
from src.logic.parsers.formula_parser import parse, render
from src.logic.verdicts import CheckResult

SYSTEMS = (SystemId.CCC, SystemId.CL5)


@dataclass(frozen=True)
class CL5Step:
    cirquent: ShallowCirquent
    rule: CL5Rule
    premises: Tuple[int, ...] = ()


@dataclass(frozen=True)
class CL5Proof:
    system: SystemId
    target: Formula
    steps: Tuple[CL5Step, ...]

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def rules(self) -> Tuple[str, ...]:
        return tuple(step.rule.name for step in self.steps)

    @property
    def conclusion(self) -> Optional[ShallowCirquent]:
        return self.steps[-1].cirquent if self.steps else None


def check_proof(proof: CL5Proof, system: Optional[SystemId] = None) -> CheckResult:
    system = system or proof.system
    if system not in SYSTEMS:
        return CheckResult.reject(None, f"{system.value} is not a shallow cirquent system")
    if not proof.steps:
        return CheckResult.reject(None, "proof has no steps")
    try:
        target = singleton(proof.target)
        check_language(target.pool[0], system)
    except CoLError as exc:
        return CheckResult.reject(None, str(exc))
    if proof.steps[-1].cirquent != target:
        return CheckResult.reject(len(proof.steps) - 1, "last step is not the singleton cirquent of the target")

    for index, step in enumerate(proof.steps):
        if any(not 0 <= p < index for p in step.premises):
            return CheckResult.reject(index, "premise index does not precede its consumer")
        premises = [proof.steps[p].cirquent for p in step.premises]
        result = check_step(premises, step.cirquent, step.rule, system)
        if not result:
            return CheckResult.reject(index, result.clause)
    return CheckResult.accept()


def proof_to_json(proof: CL5Proof) -> Dict[str, Any]:
    return {
        "system": proof.system.value,
        "target": render(proof.target),
        "steps": [
            {
                "cirquent": cirquent_to_json(step.cirquent),
                "rule": step.rule.name,
                "params": step.rule.params(),
                "premises": list(step.premises),
            }
            for step in proof.steps
        ],
    }


def proof_from_json(data: Any) -> CL5Proof:
    try:
        system = SystemId.parse(data["system"])
        steps = tuple(
            CL5Step(
                cirquent_from_json(item["cirquent"]),
                CL5Rule.from_params(item["rule"], item.get("params") or {}),
                tuple(int(p) for p in item.get("premises", [])),
            )
            for item in data["steps"]
        )
        return CL5Proof(system, parse(data["target"]), steps)
    except CoLError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"malformed cirquent proof: {exc}") from exc


def dumps(proof: CL5Proof) -> str:
    return json.dumps(proof_to_json(proof), indent=2, ensure_ascii=False)
