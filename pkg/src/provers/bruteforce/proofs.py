"""
CoL Toolkit - Brute-Force Proofs
================================
Proof objects for CL1/CL2, the step-by-step checker and the JSON schema

    {"system": "cl1"|"cl2", "target": "...",
     "steps": [{"formula": "...", "rule": "R1"|"R2"|"R3", "premises": [...], "detail": {...}}]}
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple, Union

from src.logic.errors import CoLError, SchemaError
from src.logic.formula import Atom, Chor, Formula, Literal, SystemId, check_language
from src.logic.normalizer import atoms, is_normalized, normalize
from src.logic.occurrences import iter_sites, replace_at, subformula_at
from src.logic.parsers.formula_parser import parse, render
from src.logic.verdicts import CheckResult
from src.provers.bruteforce.rules import Rule2Detail, Rule3Detail, rule1_premises

Detail = Union[None, Rule2Detail, Rule3Detail]

RULES = ("R1", "R2", "R3")


@dataclass(frozen=True)
class BFStep:
    formula: Formula
    rule: str
    premises: Tuple[int, ...] = ()
    detail: Detail = None


@dataclass(frozen=True)
class BFProof:
    system: SystemId
    target: Formula
    steps: Tuple[BFStep, ...]

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def rules(self) -> Tuple[str, ...]:
        return tuple(step.rule for step in self.steps)


def _surface_site(f: Formula, path) -> bool:
    for site in iter_sites(f):
        if site.path == tuple(path):
            return site.surface
    return False


def check_proof(proof: BFProof, system: Optional[SystemId] = None) -> CheckResult:
    """Re-derive every step's justification from its recorded details."""
    system = system or proof.system
    if system not in (SystemId.CL1, SystemId.CL2):
        return CheckResult.reject(None, f"{system.value} is not a brute-force system")
    if not proof.steps:
        return CheckResult.reject(None, "proof has no steps")
    if proof.steps[-1].formula != normalize(proof.target):
        return CheckResult.reject(len(proof.steps) - 1, "last step does not prove the target")

    for index, step in enumerate(proof.steps):
        f = step.formula
        if not is_normalized(f):
            return CheckResult.reject(index, "step formula is not normalized")
        try:
            check_language(f, system)
        except CoLError as exc:
            return CheckResult.reject(index, str(exc))
        if any(not 0 <= p < index for p in step.premises):
            return CheckResult.reject(index, "premise index does not precede its consumer")
        premises = [proof.steps[p].formula for p in step.premises]

        if step.rule == "R1":
            expected = rule1_premises(f)
            if expected is None:
                return CheckResult.reject(index, "Rule 1 needs a stable formula")
            if set(premises) != set(expected) or len(premises) != len(expected):
                return CheckResult.reject(index, "Rule 1 premises are not exactly the required set")
        elif step.rule == "R2":
            detail = step.detail
            if not isinstance(detail, Rule2Detail) or len(premises) != 1:
                return CheckResult.reject(index, "Rule 2 needs one premise and a site detail")
            try:
                node = subformula_at(f, detail.path)
            except IndexError:
                return CheckResult.reject(index, "Rule 2 site is outside the formula")
            if not isinstance(node, Chor) or not _surface_site(f, detail.path):
                return CheckResult.reject(index, "Rule 2 site is not a surface choice disjunction")
            if not 0 <= detail.component < len(node.args):
                return CheckResult.reject(index, "Rule 2 component index out of range")
            if premises[0] != replace_at(f, detail.path, node.args[detail.component]):
                return CheckResult.reject(index, "Rule 2 premise does not match the chosen component")
        elif step.rule == "R3":
            if system is not SystemId.CL2:
                return CheckResult.reject(index, "Rule 3 is only available in CL2")
            detail = step.detail
            if not isinstance(detail, Rule3Detail) or len(premises) != 1:
                return CheckResult.reject(index, "Rule 3 needs one premise and a pairing detail")
            try:
                pos, neg = subformula_at(f, detail.positive), subformula_at(f, detail.negative)
            except IndexError:
                return CheckResult.reject(index, "Rule 3 site is outside the formula")
            if not (isinstance(pos, Literal) and isinstance(neg, Literal)):
                return CheckResult.reject(index, "Rule 3 sites must be literals")
            if pos.negated or not neg.negated or pos.atom != neg.atom or not pos.atom.is_general:
                return CheckResult.reject(index, "Rule 3 needs P and ~P of one general atom")
            if not (_surface_site(f, detail.positive) and _surface_site(f, detail.negative)):
                return CheckResult.reject(index, "Rule 3 literals must be surface occurrences")
            if detail.fresh.is_general or detail.fresh in atoms(f):
                return CheckResult.reject(index, "Rule 3 atom must be a fresh elementary atom")
            expected = replace_at(replace_at(f, detail.positive, Literal(detail.fresh)), detail.negative, Literal(detail.fresh, True))
            if premises[0] != expected:
                return CheckResult.reject(index, "Rule 3 premise does not match the pairing")
        else:
            return CheckResult.reject(index, f"unknown rule {step.rule!r}")
    return CheckResult.accept()


def proof_to_json(proof: BFProof) -> Dict[str, Any]:
    return {
        "system": proof.system.value,
        "target": render(proof.target),
        "steps": [
            {
                "formula": render(step.formula),
                "rule": step.rule,
                "premises": list(step.premises),
                "detail": step.detail.to_json() if step.detail is not None else {},
            }
            for step in proof.steps
        ],
    }


def _detail_from_json(rule: str, data: Dict[str, Any]) -> Detail:
    if rule == "R2":
        return Rule2Detail(tuple(data["path"]), int(data["component"]))
    if rule == "R3":
        return Rule3Detail(tuple(data["positive"]), tuple(data["negative"]), Atom(data["fresh"]))
    return None


def proof_from_json(data: Any) -> BFProof:
    try:
        system = SystemId.parse(data["system"])
        steps = tuple(
            BFStep(
                parse(item["formula"]),
                item["rule"],
                tuple(int(p) for p in item.get("premises", [])),
                _detail_from_json(item["rule"], item.get("detail") or {}),
            )
            for item in data["steps"]
        )
        return BFProof(system, parse(data["target"]), steps)
    except CoLError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"malformed brute-force proof: {exc}") from exc


def dumps(proof: BFProof) -> str:
    return json.dumps(proof_to_json(proof), indent=2, ensure_ascii=False)
