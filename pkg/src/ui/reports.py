"""
CoL Toolkit - Reports
=====================
One Report per CLI invocation, rendered as text, JSON or DOT. JSON output is
deterministic: keys are sorted and wall-clock timings are left out, so equal
invocations give byte-identical reports.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Union

from src.cirquents.cl5.proofs import CL5Proof
from src.cirquents.cl5.proofs import proof_to_json as cl5_proof_json
from src.cirquents.cl15.proofs import CL15Proof
from src.cirquents.cl15.proofs import proof_to_json as cl15_proof_json
from src.logic.parsers.formula_parser import render
from src.logic.verdicts import Exhausted, Provable, SearchStats, Unprovable, Verdict
from src.provers.bruteforce.proofs import BFProof
from src.provers.bruteforce.proofs import proof_to_json as bf_proof_json

AnyProof = Union[BFProof, CL5Proof, CL15Proof]

VERDICTS = ("provable", "unprovable", "valid", "invalid", "resource-exhausted", "error")

EXIT_CODES = {
    "provable": 0,
    "valid": 0,
    "unprovable": 1,
    "invalid": 1,
    "error": 2,
    "resource-exhausted": 3,
}

# timings differ between runs
_VOLATILE_STATS = ("elapsed_ms",)


@dataclass
class Report:
    command: str
    verdict: str
    system: Optional[str] = None
    formula: Optional[str] = None
    proof: Optional[Dict[str, Any]] = None
    witness: Any = None
    stats: Dict[str, Any] = field(default_factory=dict)
    bounds: Dict[str, Any] = field(default_factory=dict)
    details: Dict[str, Any] = field(default_factory=dict)
    diagnostics: List[str] = field(default_factory=list)
    table: Optional[str] = None
    dot: Optional[str] = None

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.verdict]

    def as_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"command": self.command, "verdict": self.verdict}
        for name in ("system", "formula", "proof", "witness"):
            value = getattr(self, name)
            if value is not None:
                out[name] = value
        if self.stats:
            out["stats"] = {k: v for k, v in self.stats.items() if k not in _VOLATILE_STATS}
        if self.bounds or self.verdict in ("unprovable", "resource-exhausted"):
            out["bounds"] = self.bounds
        if self.details:
            out["details"] = self.details
        if self.diagnostics:
            out["diagnostics"] = list(self.diagnostics)
        return out


def error_report(command: str, message: str) -> Report:
    return Report(command, "error", diagnostics=[message])


def proof_json(proof: AnyProof) -> Dict[str, Any]:
    if isinstance(proof, BFProof):
        return bf_proof_json(proof)
    if isinstance(proof, CL5Proof):
        return cl5_proof_json(proof)
    return cl15_proof_json(proof)


def from_verdict(command: str, system: str, formula: str, verdict: Verdict, with_proof: bool = True) -> Report:
    """Report for a prover verdict; unprovable and exhausted ones keep their bounds."""
    stats = verdict.stats.as_dict() if isinstance(verdict.stats, SearchStats) else {}
    if isinstance(verdict, Provable):
        report = Report(command, "provable", system, formula, stats=stats)
        if with_proof:
            report.proof = proof_json(verdict.proof)
        report.details["steps"] = len(verdict.proof.steps)
        return report
    if isinstance(verdict, Unprovable):
        return Report(command, "unprovable", system, formula, stats=stats, bounds=dict(verdict.bounds))
    if isinstance(verdict, Exhausted):
        return Report(
            command, "resource-exhausted", system, formula,
            stats=stats, bounds=dict(verdict.bounds), diagnostics=[verdict.reason],
        )
    raise TypeError(f"not a verdict: {verdict!r}")


def proof_lines(proof: AnyProof) -> List[str]:
    lines = []
    if isinstance(proof, BFProof):
        for i, step in enumerate(proof.steps):
            source = f" from {', '.join(map(str, step.premises))}" if step.premises else ""
            lines.append(f"{i:>3}. {render(step.formula, 'unicode')}    [{step.rule}{source}]")
    elif isinstance(proof, CL5Proof):
        for i, step in enumerate(proof.steps):
            source = f" from {', '.join(map(str, step.premises))}" if step.premises else ""
            lines.append(f"{i:>3}. {step.cirquent}    [{step.rule}{source}]")
    else:
        for i, step in enumerate(proof.steps):
            lines.append(f"{i:>3}. {step.cirquent}    [{step.rule or 'Axiom'}]")
    return lines


def _escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def proof_to_dot(proof: AnyProof, name: str = "proof") -> str:
    """Derivation graph: one box per step, an edge from each premise to its conclusion."""
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=box, fontname=\"monospace\"];"]
    for i, step in enumerate(proof.steps):
        if isinstance(proof, BFProof):
            label, rule, premises = render(step.formula, "unicode"), step.rule, step.premises
        elif isinstance(proof, CL5Proof):
            label, rule, premises = str(step.cirquent), str(step.rule), step.premises
        else:
            label, rule = str(step.cirquent), str(step.rule or "Axiom")
            premises = (i - 1,) if i > 0 else ()
        lines.append(f'  s{i} [label="{i}: {_escape(label)}\\n{_escape(rule)}"];')
        for p in premises:
            lines.append(f"  s{p} -> s{i};")
    lines.append("}")
    return "\n".join(lines)


def to_json(report: Report) -> str:
    return json.dumps(report.as_dict(), indent=2, sort_keys=True, ensure_ascii=False)


def to_text(report: Report) -> str:
    head = f"{report.command}: {report.verdict}"
    if report.system:
        head += f" ({report.system})"
    lines = [head]
    if report.formula:
        lines.append(f"formula: {report.formula}")
    for key, value in report.details.items():
        lines.append(f"{key}: {value}")
    if report.witness is not None:
        lines.append(f"witness: {json.dumps(report.witness, ensure_ascii=False)}")
    if report.stats:
        lines.append("stats: " + ", ".join(f"{k}={v}" for k, v in report.stats.items()))
    if report.bounds:
        lines.append("bounds: " + ", ".join(f"{k}={v}" for k, v in report.bounds.items()))
    for message in report.diagnostics:
        lines.append(f"! {message}")
    if report.table:
        lines.append(report.table)
    return "\n".join(lines)


def render_report(report: Report, fmt: str = "text", proof: Optional[AnyProof] = None) -> str:
    if fmt == "json":
        return to_json(report)
    if fmt == "dot":
        if report.dot is not None:
            return report.dot
        if proof is not None:
            return proof_to_dot(proof)
        return to_text(report)
    text = to_text(report)
    if proof is not None:
        text += "\n" + "\n".join(proof_lines(proof))
    return text
