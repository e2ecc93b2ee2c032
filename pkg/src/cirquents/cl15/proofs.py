"""
CoL Toolkit - CL15 Proofs
=========================
A CL15 proof is a sequence of cirquents: the first is an Axiom conclusion,
each later one follows from its predecessor by the recorded rule, and the
last is the target (<F>, <{0}>, <{0}>).

    {"system": "cl15", "target": "...",
     "steps": [{"cirquent": {...}, "rule": "axiom"},
               {"cirquent": {...}, "rule": {"name": "OrI", "params": {"index": 0}}}]}
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

from src.cirquents.cl15.cirquent import (
    Cirquent15,
    axiom_match,
    cirquent_from_json,
    cirquent_to_json,
    formula_to_target,
)
from src.cirquents.cl15.rules import CL15Rule, check_transition
from src.logic.errors import CoLError, SchemaError
from src.logic.formula import Formula
from src.logic.parsers.formula_parser import parse, render
from src.logic.verdicts import CheckResult


@dataclass(frozen=True)
class CL15Step:
    cirquent: Cirquent15
    rule: Optional[CL15Rule] = None


@dataclass(frozen=True)
class CL15Proof:
    target: Formula
    steps: Tuple[CL15Step, ...]

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def rules(self) -> Tuple[str, ...]:
        return tuple("axiom" if s.rule is None else s.rule.tag for s in self.steps)

    def count(self, tag: str) -> int:
        return sum(1 for s in self.steps if s.rule is not None and s.rule.tag == tag)


def check_proof(proof: CL15Proof) -> CheckResult:
    if not proof.steps:
        return CheckResult.reject(None, "proof has no steps")
    first = proof.steps[0]
    if first.rule is not None or not axiom_match(first.cirquent):
        return CheckResult.reject(0, "the first cirquent is not an Axiom conclusion")
    for index in range(1, len(proof.steps)):
        step = proof.steps[index]
        if step.rule is None:
            return CheckResult.reject(index, "only the first cirquent may be an Axiom")
        problem = check_transition(proof.steps[index - 1].cirquent, step.cirquent, step.rule)
        if problem is not None:
            return CheckResult.reject(index, problem)
    try:
        target = formula_to_target(proof.target)
    except CoLError as exc:
        return CheckResult.reject(None, str(exc))
    if proof.steps[-1].cirquent != target:
        return CheckResult.reject(len(proof.steps) - 1, "last cirquent is not the target")
    return CheckResult.accept()


def proof_to_json(proof: CL15Proof) -> Dict[str, Any]:
    return {
        "system": "cl15",
        "target": render(proof.target),
        "steps": [
            {
                "cirquent": cirquent_to_json(step.cirquent),
                "rule": "axiom" if step.rule is None else step.rule.to_json(),
            }
            for step in proof.steps
        ],
    }


def proof_from_json(data: Any) -> CL15Proof:
    try:
        if str(data.get("system", "cl15")).lower() != "cl15":
            raise SchemaError(f"not a CL15 proof: system {data['system']!r}")
        steps = tuple(
            CL15Step(
                cirquent_from_json(item["cirquent"]),
                None if item["rule"] == "axiom" else CL15Rule.from_json(item["rule"]),
            )
            for item in data["steps"]
        )
        return CL15Proof(parse(data["target"]), steps)
    except CoLError:
        raise
    except (AttributeError, KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"malformed CL15 proof: {exc}") from exc


def dumps(proof: CL15Proof) -> str:
    return json.dumps(proof_to_json(proof), indent=2, ensure_ascii=False)
