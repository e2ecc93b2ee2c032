"""
CoL Toolkit - Corpus Runner
===========================
Runs a manifest of worked examples plus the seeded cross-oracle property
suites and collects the outcomes into a pandas summary.

Manifest format, one JSON object per line (blank lines and lines starting
with "#" are skipped):

    {"formula": "...", "system": "cl5", "expect": "provable", "budget": {...}, "ref": "..."}
    {"proof": "proofs/blass-cl5.json", "expect": "valid", "ref": "..."}

"expect" is provable|unprovable for the provers, valid|invalid for the
CCC/CL5 oracles and for proof files. Optional keys: "steps" (exact proof
length) and "rules" (exact count per rule name in the proof found).
"""
from __future__ import annotations

import json
import logging
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, Iterator, List, Optional, Tuple, Union

import pandas as pd

from src.cirquents.cl5.ars import ars_valid
from src.cirquents.cl5.binary import decide_binary
from src.cirquents.cl5.cirquent import singleton
from src.cirquents.cl5.search import search_proof
from src.games.catalogue import default_catalogue
from src.games.interpretation import Interpretation, elementary_interpretations, interpret
from src.games.matches import verify_strategy
from src.games.oracle import uniformly_winnable
from src.games.statics import is_static
from src.logic.classical import is_tautology
from src.logic.enumeration import CLASSICAL_CONNECTIVES, CL1_CONNECTIVES, literals_over, random_formula
from src.logic.errors import CoLError, ResourceExhausted, SchemaError
from src.logic.formula import Formula, SystemId
from src.logic.normalizer import atoms, normalize
from src.logic.parsers.formula_parser import parse, render
from src.logic.verdicts import Provable
from src.provers.bruteforce.decider import BruteForceDecider
from src.provers.bruteforce.strategy import extract_strategy
from src.settings import Settings, with_overrides
from src.ui import engines

logger = logging.getLogger(__name__)

EXPECTATIONS = ("provable", "unprovable", "valid", "invalid")
BUDGET_KEYS = ("max_nodes", "timeout_ms", "max_proof_length", "contraction_budget", "mode")


@dataclass(frozen=True)
class ManifestEntry:
    line: int
    expect: str
    formula: Optional[str] = None
    system: Optional[str] = None
    proof: Optional[str] = None
    budget: Dict[str, Any] = field(default_factory=dict)
    ref: str = ""
    steps: Optional[int] = None
    rules: Dict[str, int] = field(default_factory=dict)

    @property
    def name(self) -> str:
        return self.proof if self.proof else f"{self.system}: {self.formula}"


@dataclass(frozen=True)
class EntryResult:
    name: str
    kind: str
    system: str
    expect: str
    outcome: str
    passed: bool
    nodes: int = 0
    message: str = ""
    ref: str = ""


@dataclass
class CorpusSummary:
    results: List[EntryResult]
    seed: int

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failures(self) -> List[EntryResult]:
        return [r for r in self.results if not r.passed]

    def frame(self) -> pd.DataFrame:
        columns = ["name", "kind", "system", "expect", "outcome", "passed", "nodes"]
        return pd.DataFrame([{c: getattr(r, c) for c in columns} for r in self.results], columns=columns)

    def totals(self) -> Dict[str, int]:
        df = self.frame()
        if df.empty:
            return {"entries": 0, "passed": 0, "failed": 0}
        counts = df.groupby("kind")["passed"].agg(["count", "sum"])
        out = {"entries": int(len(df)), "passed": int(df["passed"].sum()), "failed": int((~df["passed"]).sum())}
        for kind, row in counts.iterrows():
            out[f"{kind}_passed"] = int(row["sum"])
        return out

    def as_records(self) -> List[Dict[str, Any]]:
        return [
            {"name": r.name, "kind": r.kind, "system": r.system, "expect": r.expect,
             "outcome": r.outcome, "passed": r.passed, "nodes": r.nodes, "message": r.message, "ref": r.ref}
            for r in self.results
        ]


def _entry(line: int, data: Any) -> ManifestEntry:
    if not isinstance(data, dict):
        raise SchemaError(f"manifest line {line}: expected a JSON object")
    expect = data.get("expect")
    if expect not in EXPECTATIONS:
        raise SchemaError(f"manifest line {line}: expect must be one of {', '.join(EXPECTATIONS)}")
    if ("formula" in data) == ("proof" in data):
        raise SchemaError(f"manifest line {line}: give exactly one of 'formula' and 'proof'")
    if "formula" in data and "system" not in data:
        raise SchemaError(f"manifest line {line}: formula entries need a 'system'")
    budget = data.get("budget") or {}
    unknown = sorted(set(budget) - set(BUDGET_KEYS))
    if unknown:
        raise SchemaError(f"manifest line {line}: unknown budget key(s) {', '.join(unknown)}")
    try:
        return ManifestEntry(
            line=line,
            expect=expect,
            formula=data.get("formula"),
            system=data.get("system"),
            proof=data.get("proof"),
            budget=dict(budget),
            ref=str(data.get("ref", "")),
            steps=int(data["steps"]) if "steps" in data else None,
            rules={str(k): int(v) for k, v in (data.get("rules") or {}).items()},
        )
    except (TypeError, ValueError, AttributeError) as exc:
        raise SchemaError(f"manifest line {line}: {exc}") from exc


def parse_manifest(lines: Iterator[str]) -> List[ManifestEntry]:
    entries = []
    for number, raw in enumerate(lines, start=1):
        text = raw.strip()
        if not text or text.startswith("#"):
            continue
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"manifest line {number}: {exc}") from exc
        entries.append(_entry(number, data))
    return entries


def load_manifest(path: Union[str, Path]) -> List[ManifestEntry]:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return parse_manifest(iter(handle))
    except OSError as exc:
        raise SchemaError(f"cannot read manifest {path}: {exc}") from exc


def _proof_shape_problem(entry: ManifestEntry, proof: Any) -> Optional[str]:
    if entry.steps is not None and len(proof.steps) != entry.steps:
        return f"expected {entry.steps} steps, found {len(proof.steps)}"
    for rule_name, count in entry.rules.items():
        found = proof.rules.count(rule_name)
        if found != count:
            return f"expected {count} x {rule_name}, found {found}"
    return None


def run_entry(entry: ManifestEntry, settings: Settings, base: Path) -> EntryResult:
    """Outcome of one manifest entry; errors count as failures, not crashes."""
    if entry.proof is not None:
        try:
            system, proof = engines.load_proof(base / entry.proof)
            result = engines.check(system, proof)
        except CoLError as exc:
            return EntryResult(entry.name, "proof", "-", entry.expect, "error", False, message=str(exc), ref=entry.ref)
        outcome = "valid" if result.ok else "invalid"
        message = "" if result.ok else result.describe()
        return EntryResult(entry.name, "proof", system.value, entry.expect, outcome, outcome == entry.expect, message=message, ref=entry.ref)

    local = with_overrides(settings, **entry.budget)
    try:
        system = SystemId.parse(entry.system)
        f = parse(entry.formula)
        if entry.expect in ("valid", "invalid"):
            truth, _ = engines.oracle(f, system, local)
            outcome, nodes, message = ("valid" if truth else "invalid"), 0, ""
        else:
            verdict = engines.prove(f, system, local)
            outcome, nodes = verdict.status, verdict.stats.nodes
            message = getattr(verdict, "reason", "")
            if isinstance(verdict, Provable) and entry.expect == "provable":
                message = _proof_shape_problem(entry, verdict.proof) or ""
    except (CoLError, ValueError) as exc:
        return EntryResult(entry.name, "formula", str(entry.system), entry.expect, "error", False, message=str(exc), ref=entry.ref)
    passed = outcome == entry.expect and not message
    return EntryResult(entry.name, "formula", system.value, entry.expect, outcome, passed, nodes, message, entry.ref)


# property suites

Case = Callable[[Formula], Optional[bool]]


def _suite(name: str, system: str, formulas: List[Formula], case: Case) -> EntryResult:
    """Run case on every formula; None means the case does not apply."""
    checked, failed = 0, []
    for f in formulas:
        try:
            ok = case(f)
        except ResourceExhausted as exc:
            logger.debug("%s: skipped %s (%s)", name, render(f), exc.reason)
            continue
        if ok is None:
            continue
        checked += 1
        if not ok:
            failed.append(render(f))
    logger.info("%s: %d cases, %d failures", name, checked, len(failed))
    message = f"first failure: {failed[0]}" if failed else ""
    return EntryResult(name, "property", system, "agree", f"{checked - len(failed)}/{checked}", not failed, 0, message)


def _random_family(rng: random.Random, names: List[str], max_connectives: int, connectives, count: int) -> List[Formula]:
    leaves = literals_over(names)
    return [random_formula(rng, leaves, max_connectives, connectives) for _ in range(count)]


def property_suites(settings: Settings, seed: int) -> List[EntryResult]:
    count = settings.corpus.random_formulas
    rng = random.Random(seed)
    cl1_family = _random_family(rng, ["p", "q"], 4, CL1_CONNECTIVES, count)
    classical_family = _random_family(rng, ["P", "Q", "R"], 5, CLASSICAL_CONNECTIVES, count)
    static_family = _random_family(rng, ["P", "Q"], 2, CL1_CONNECTIVES, max(1, count // 4))
    catalogue = default_catalogue()
    game_names = sorted(catalogue)
    bf_nodes = settings.bruteforce.max_nodes

    cl1_verdicts: Dict[Formula, Any] = {}

    def cl1_verdict(f: Formula):
        if f not in cl1_verdicts:
            cl1_verdicts[f] = BruteForceDecider(SystemId.CL1, bf_nodes).decide(f)
        return cl1_verdicts[f]

    def cl1_agrees(f: Formula) -> bool:
        verdict = cl1_verdict(f)
        if verdict.status == "resource-exhausted":
            raise ResourceExhausted(verdict.reason)
        return (verdict.status == "provable") == uniformly_winnable(normalize(f))

    def strategy_sound(f: Formula) -> Optional[bool]:
        verdict = cl1_verdict(f)
        if not isinstance(verdict, Provable):
            return None
        strategy = extract_strategy(verdict.proof)
        target = normalize(f)
        return all(verify_strategy(interpret(target, itp), strategy) for itp in elementary_interpretations(target))

    def cl5_oracles_agree(f: Formula) -> bool:
        truth = decide_binary(f, settings.cl5.binary_occurrence_bound)
        ars = ars_valid(singleton(f), settings.cl5.ars_port_bound).valid
        found = isinstance(search_proof(f, SystemId.CL5, settings.cl5.search_max_nodes), Provable)
        return truth == ars == found

    def ccc_is_classical(f: Formula) -> bool:
        found = isinstance(search_proof(f, SystemId.CCC, settings.cl5.search_max_nodes), Provable)
        return found == is_tautology(f)

    # the generator is consumed before the suites run, so results do not depend on suite order
    picks: Dict[Formula, Tuple[str, ...]] = {}
    for f in static_family:
        if f not in picks:
            general = [a for a in atoms(normalize(f)) if a.is_general]
            picks[f] = tuple(rng.choice(game_names) for _ in general)

    def static(f: Formula) -> bool:
        target = normalize(f)
        general = [a for a in atoms(target) if a.is_general]
        itp = Interpretation({a: catalogue[name] for a, name in zip(general, picks[f])})
        return is_static(interpret(target, itp), settings.games.static_run_bound)

    return [
        _suite("cl1-oracle-agreement", "cl1", cl1_family, cl1_agrees),
        _suite("cl1-strategy-soundness", "cl1", cl1_family, strategy_sound),
        _suite("cl5-oracle-agreement", "cl5", classical_family, cl5_oracles_agree),
        _suite("ccc-classical-agreement", "ccc", classical_family, ccc_is_classical),
        _suite("static-games", "games", static_family, static),
    ]


def run_corpus(
    manifest: Union[str, Path],
    settings: Settings,
    seed: Optional[int] = None,
    with_properties: bool = True,
) -> CorpusSummary:
    """Run every manifest entry, then the property suites."""
    path = Path(manifest)
    seed = settings.corpus.seed if seed is None else seed
    entries = load_manifest(path)
    logger.info("running %d manifest entries from %s", len(entries), path)
    results = [run_entry(entry, settings, path.parent) for entry in entries]
    if with_properties and entries:
        results.extend(property_suites(settings, seed))
    for failure in (r for r in results if not r.passed):
        logger.warning("corpus entry failed: %s (%s)", failure.name, failure.message or failure.outcome)
    return CorpusSummary(results, seed)
