"""
CoL Toolkit - Command Line
==========================
Subcommands parse, prove, decide, check, play, corpus and render.

Exit codes: 0 provable/valid, 1 unprovable/invalid, 2 usage or input error,
3 resource exhausted. Reports go to stdout and logs to stderr.
"""
from __future__ import annotations

import argparse
import json
import logging
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from src.cirquents.cl5.cirquent import cirquent_from_json as cl5_cirquent_from_json
from src.cirquents.cl5.cirquent import cirquent_to_json as cl5_cirquent_to_json
from src.cirquents.cl5.cirquent import singleton
from src.cirquents.cl5.cirquent import to_dot as cl5_dot
from src.cirquents.cl15.cirquent import cirquent_from_json as cl15_cirquent_from_json
from src.cirquents.cl15.cirquent import cirquent_to_json as cl15_cirquent_to_json
from src.cirquents.cl15.cirquent import formula_to_target
from src.cirquents.cl15.cirquent import to_dot as cl15_dot
from src.games.catalogue import default_catalogue, load_interpretation, run_to_json
from src.games.game_tree import MACHINE, depth
from src.games.interpretation import Interpretation, catalogue_interpretations, interpret
from src.games.matches import Strategy, always_pass, copycat_strategy, find_counterexample, play_match, random_adversary
from src.logic.errors import CoLError, ResourceExhausted, SchemaError
from src.logic.formula import Formula, SystemId, check_language, is_recurrence_free
from src.logic.normalizer import atoms, formula_size, normalize, recurrence_complexity
from src.logic.parsers.formula_parser import parse, render
from src.logic.verdicts import Exhausted, Provable
from src.provers.bruteforce.strategy import extract_strategy
from src.settings import Settings, configure_logging, load_settings, with_overrides
from src.ui import engines
from src.ui.corpus_runner import run_corpus
from src.ui.reports import AnyProof, Report, error_report, from_verdict, proof_to_dot, render_report

logger = logging.getLogger(__name__)

FORMATS = ("text", "json", "dot")
SYSTEMS = tuple(s.value for s in SystemId)


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {value}")
    return value


def _natural(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must not be negative: {value}")
    return value


class _Parser(argparse.ArgumentParser):
    """argparse that raises instead of exiting, so usage errors become exit code 2 reports."""

    def error(self, message: str):
        raise SchemaError(f"usage: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--system", choices=SYSTEMS, default=None, help="Logic to work in")
    common.add_argument("--format", choices=FORMATS, default="text", help="Report format")
    common.add_argument("--config", default=None, help="YAML settings file (default configs/main-config.yaml)")
    common.add_argument("--max-nodes", type=_positive_int, default=None, help="Search node budget")
    common.add_argument("--max-proof-length", type=_positive_int, default=None, help="CL15 depth limit")
    common.add_argument("--contraction-budget", type=_natural, default=None, help="CL15 contractions per branch")
    common.add_argument("--mode", choices=("cl15c", "bounded", "depth_limited"), default=None, help="CL15 search mode")
    common.add_argument("--timeout-ms", type=_positive_int, default=None, help="Wall-clock limit")
    common.add_argument("--seed", type=int, default=None, help="Seed for every random choice")
    common.add_argument("-v", "--verbose", action="count", default=0, help="More logging on stderr")

    parser = _Parser(prog="col", description="Computability Logic toolkit: provers, checkers and game semantics")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("parse", parents=[common], help="Parse and normalize a formula")
    p.add_argument("formula")

    p = sub.add_parser("prove", parents=[common], help="Search for a proof")
    p.add_argument("formula")

    p = sub.add_parser("decide", parents=[common], help="Decide a formula (CCC/CL5 by semantic oracle)")
    p.add_argument("formula")
    p.add_argument("--oracle", choices=("binary", "ars"), default="binary", help="CL5 oracle")

    p = sub.add_parser("check", parents=[common], help="Check a JSON proof file")
    p.add_argument("proof_file")

    p = sub.add_parser("play", parents=[common], help="Play a strategy against an adversary")
    p.add_argument("formula")
    p.add_argument("--strategy", choices=("proof", "copycat", "pass"), default="proof")
    p.add_argument("--interp", "--interpretation", dest="interp", default=None, help="Interpretation JSON file")
    p.add_argument("--adversary", choices=("exhaustive", "random"), default="exhaustive")
    p.add_argument("--rounds", type=_positive_int, default=None, help="Matches per interpretation (random adversary)")

    p = sub.add_parser("corpus", parents=[common], help="Run a corpus manifest and the property suites")
    p.add_argument("manifest", nargs="?", default=None)
    p.add_argument("--no-properties", action="store_true", help="Skip the property suites")

    p = sub.add_parser("render", parents=[common], help="Render a formula, cirquent or proof file")
    p.add_argument("source", help="Formula text, or a JSON cirquent or proof file")
    return parser


def _system(args, default: SystemId) -> SystemId:
    return SystemId.parse(args.system) if args.system else default


def _settings(args) -> Settings:
    base = load_settings(args.config)
    return with_overrides(
        base,
        max_nodes=args.max_nodes,
        timeout_ms=args.timeout_ms,
        max_proof_length=args.max_proof_length,
        contraction_budget=args.contraction_budget,
        mode=args.mode,
    )


# subcommands return the report plus an optional proof object for text/dot rendering

Outcome = Tuple[Report, Optional[AnyProof]]


def run_parse(args, settings: Settings) -> Outcome:
    f = parse(args.formula)
    target = normalize(f)
    if args.system:
        check_language(target, SystemId.parse(args.system))
    details: Dict[str, Any] = {
        "unicode": render(f, "unicode"),
        "normalized": render(target),
        "atoms": [a.name for a in atoms(target)],
        "size": formula_size(target),
        "recurrence_complexity": recurrence_complexity(target),
    }
    return Report("parse", "valid", args.system, render(f), details=details), None


def run_prove(args, settings: Settings) -> Outcome:
    system = _system(args, SystemId.CL1)
    f = parse(args.formula)
    verdict = engines.prove(f, system, settings)
    report = from_verdict("prove", system.value, render(f), verdict)
    return report, verdict.proof if isinstance(verdict, Provable) else None


def run_decide(args, settings: Settings) -> Outcome:
    system = _system(args, SystemId.CL5)
    f = parse(args.formula)
    if system in engines.SHALLOW:
        truth, witness = engines.oracle(f, system, settings, args.oracle)
        method = "ars" if args.oracle == "ars" and system is SystemId.CL5 else "binary"
        report = Report("decide", "valid" if truth else "invalid", system.value, render(f), witness=witness)
        report.details["oracle"] = "classical-tautology" if system is SystemId.CCC else method
        return report, None
    verdict = engines.prove(f, system, settings)
    return from_verdict("decide", system.value, render(f), verdict, with_proof=False), None


def run_check(args, settings: Settings) -> Outcome:
    system, proof = engines.load_proof(args.proof_file)
    if args.system and SystemId.parse(args.system) is not system:
        raise SchemaError(f"proof file is a {system.value} proof, not {args.system}")
    result = engines.check(system, proof)
    report = Report("check", "valid" if result.ok else "invalid", system.value, render(proof.target))
    report.details["steps"] = len(proof.steps)
    if not result.ok:
        report.details["failing_step"] = result.step
        report.diagnostics.append(result.describe())
    return report, proof


def _interpretations(args, f: Formula) -> List[Interpretation]:
    if args.interp:
        itp = load_interpretation(args.interp)
        for atom in atoms(f):
            itp.game_for(atom)
        return [itp]
    return list(catalogue_interpretations(f, default_catalogue()))


def _machine(args, settings: Settings, f: Formula) -> Tuple[Optional[Strategy], Optional[Report]]:
    if args.strategy == "pass":
        return always_pass(), None
    if args.strategy == "copycat":
        return copycat_strategy(), None
    system = _system(args, SystemId.CL2)
    if system not in engines.BRUTE_FORCE:
        raise SchemaError("proof strategies come from CL1/CL2 proofs")
    verdict = engines.prove(f, system, settings)
    if isinstance(verdict, Provable):
        return extract_strategy(verdict.proof), None
    report = from_verdict("play", system.value, render(f), verdict, with_proof=False)
    if not isinstance(verdict, Exhausted):
        report.diagnostics.append("no strategy: the formula is not provable")
    return None, report


def run_play(args, settings: Settings) -> Outcome:
    f = parse(args.formula)
    target = normalize(f)
    if not is_recurrence_free(target):
        raise SchemaError("play needs a recurrence-free formula")
    machine, refused = _machine(args, settings, target)
    if refused is not None:
        return refused, None
    interpretations = _interpretations(args, target)
    seed = settings.corpus.seed if args.seed is None else args.seed
    rounds = args.rounds or settings.games.rounds
    played, won, transcript = 0, 0, None
    for index, itp in enumerate(interpretations):
        game = interpret(target, itp)
        if args.adversary == "exhaustive":
            played += 1
            loss = find_counterexample(game, machine)
            if loss is None:
                won += 1
            elif transcript is None:
                transcript = {"interpretation": itp.describe(), "run": run_to_json(loss.run), "winner": loss.winner.value}
            continue
        limit = depth(game) + settings.games.max_steps_slack
        for r in range(rounds):
            adversary = random_adversary(game, seed * 1_000_003 + index * 101 + r)
            result = play_match(game, machine, adversary, limit)
            played += 1
            if result.winner is MACHINE:
                won += 1
            elif transcript is None:
                transcript = {"interpretation": itp.describe(), "run": run_to_json(result.run), "winner": result.winner.value}
    report = Report("play", "valid" if won == played else "invalid", args.system, render(f), witness=transcript)
    report.details.update({"strategy": machine.name, "adversary": args.adversary, "matches": played, "won": won})
    if args.adversary == "random":
        report.details["seed"] = seed
    return report, None


def run_corpus_command(args, settings: Settings) -> Outcome:
    manifest = Path(args.manifest) if args.manifest else settings.corpus.manifest_path()
    summary = run_corpus(manifest, settings, args.seed, with_properties=not args.no_properties)
    report = Report("corpus", "valid" if summary.passed else "invalid")
    report.details.update(summary.totals())
    report.details["seed"] = summary.seed
    report.witness = summary.as_records()
    if args.format == "text":
        report.witness = None
        frame = summary.frame()
        report.table = frame.to_string(index=False) if not frame.empty else "(no entries)"
    report.diagnostics.extend(f"failed: {r.name} ({r.message or r.outcome})" for r in summary.failures())
    return report, None


def _render_json_file(path: Path, args) -> Outcome:
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    if isinstance(data, dict) and "steps" in data:
        system, proof = engines.load_proof(path)
        report = Report("render", "valid", system.value, render(proof.target))
        report.dot = proof_to_dot(proof)
        return report, proof
    if isinstance(data, dict) and "pool" in data:
        c = cl5_cirquent_from_json(data)
        report = Report("render", "valid", "cl5", details={"cirquent": str(c)}, dot=cl5_dot(c))
        report.witness = cl5_cirquent_to_json(c)
        return report, None
    if isinstance(data, dict) and "oformulas" in data:
        c = cl15_cirquent_from_json(data)
        report = Report("render", "valid", "cl15", details={"cirquent": str(c)}, dot=cl15_dot(c))
        report.witness = cl15_cirquent_to_json(c)
        return report, None
    raise SchemaError(f"{path}: neither a proof nor a cirquent")


def run_render(args, settings: Settings) -> Outcome:
    path = Path(args.source)
    if path.suffix == ".json" and path.exists():
        return _render_json_file(path, args)
    f = parse(args.source)
    system = _system(args, SystemId.CL5)
    report = Report("render", "valid", system.value, render(f))
    report.details["unicode"] = render(f, "unicode")
    if system is SystemId.CL15:
        c = formula_to_target(f)
        report.dot, report.witness = cl15_dot(c), cl15_cirquent_to_json(c)
    else:
        target = normalize(f)
        check_language(target, system)
        c = singleton(target)
        report.dot, report.witness = cl5_dot(c), cl5_cirquent_to_json(c)
    return report, None


COMMANDS: Dict[str, Callable[[Any, Settings], Outcome]] = {
    "parse": run_parse,
    "prove": run_prove,
    "decide": run_decide,
    "check": run_check,
    "play": run_play,
    "corpus": run_corpus_command,
    "render": run_render,
}


def run(argv: Optional[Sequence[str]] = None) -> Tuple[Report, str]:
    """Execute one invocation and return its report with the rendered output."""
    fmt = "text"
    command = "col"
    try:
        args = build_parser().parse_args(argv)
        fmt, command = args.format, args.command
        settings = _settings(args)
        configure_logging(settings, args.verbose)
        logger.debug("running %s with %s", command, vars(args))
        report, proof = COMMANDS[command](args, settings)
    except ResourceExhausted as exc:
        report, proof = Report(command, "resource-exhausted", diagnostics=[exc.reason]), None
        report.stats = dict(exc.stats)
    except (CoLError, ValueError) as exc:
        report, proof = error_report(command, str(exc)), None
    return report, render_report(report, fmt, proof)


def main(argv: Optional[Sequence[str]] = None) -> int:
    report, text = run(argv)
    print(text)
    return report.exit_code
