import json
import random
from dataclasses import replace

import pytest

from src.games.catalogue import default_catalogue
from src.games.interpretation import catalogue_interpretations, elementary_interpretations, interpret
from src.games.matches import play_match, iter_adversaries, verify_strategy
from src.games.oracle import uniformly_winnable
from src.logic.enumeration import CL1_CONNECTIVES, enumerate_formulas, literals_over, random_formula
from src.logic.errors import LanguageGateError, SchemaError
from src.logic.formula import Atom, SystemId
from src.logic.normalizer import normalize, rename_atoms
from src.logic.parsers.formula_parser import parse
from src.logic.verdicts import Exhausted, Provable, Unprovable
from src.provers.bruteforce.decider import BruteForceDecider, decide
from src.provers.bruteforce.proofs import BFStep, check_proof, dumps, proof_from_json, proof_to_json
from src.provers.bruteforce.rules import fresh_atom, rule1_premises, rule2_premises, rule3_premises
from src.provers.bruteforce.strategy import extract_strategy
from src.tests.conftest import CL1_EXAMPLE


def prove(text, system=SystemId.CL1):
    verdict = decide(parse(text), system)
    assert isinstance(verdict, Provable), verdict
    return verdict.proof


class TestRules:
    def test_rule1_needs_stability(self):
        assert rule1_premises(normalize(parse("p + ~p"))) is None
        assert rule1_premises(parse("p | ~p")) == ()

    def test_rule1_resolves_every_surface_chand(self):
        premises = rule1_premises(normalize(parse("p | ~p | (q * r)")))
        assert premises == (parse("p | ~p | q"), parse("p | ~p | r"))

    def test_rule2_choices(self):
        premises = [p for p, _ in rule2_premises(parse("p + ~p"))]
        assert premises == [parse("p"), parse("~p")]

    def test_rule3_pairs_general_literals(self):
        f = normalize(parse("P & P -> P"))
        premises = rule3_premises(f)
        assert len(premises) == 2
        assert all(detail.fresh == Atom("p") for _, detail in premises)

    def test_fresh_atom_avoids_clashes(self):
        assert fresh_atom(parse("p | P"), Atom("P")) == Atom("p1")


class TestDecider:
    def test_cl1_worked_proof(self):
        proof = prove(CL1_EXAMPLE)
        assert len(proof.steps) == 5
        assert proof.rules == ("R1", "R2", "R1", "R2", "R1")
        assert check_proof(proof)

    def test_cl2_worked_proof(self):
        proof = prove("P & P -> P", SystemId.CL2)
        assert proof.rules == ("R1", "R3")
        assert check_proof(proof)

    def test_duplication_is_unprovable(self):
        verdict = decide(parse("P -> P & P"), SystemId.CL2)
        assert isinstance(verdict, Unprovable)
        assert verdict.bounds["system"] == "cl2"

    def test_choice_of_a_truth_value_is_unprovable(self):
        assert isinstance(decide(parse("p + ~p"), SystemId.CL1), Unprovable)

    def test_gate(self):
        with pytest.raises(LanguageGateError):
            decide(parse("P | ~P"), SystemId.CL1)
        with pytest.raises(LanguageGateError):
            decide(parse("!P"), SystemId.CL2)
        with pytest.raises(ValueError):
            BruteForceDecider(SystemId.CL5)

    def test_node_budget(self):
        verdict = decide(parse(CL1_EXAMPLE), SystemId.CL1, max_nodes=1)
        assert isinstance(verdict, Exhausted)
        assert "node budget" in verdict.reason

    def test_agrees_with_uniform_policy_oracle(self):
        family = enumerate_formulas(literals_over(["p"]), 2, CL1_CONNECTIVES)
        for f in family:
            provable = isinstance(decide(f, SystemId.CL1), Provable)
            assert provable == uniformly_winnable(f), f

    @pytest.mark.slow
    def test_agrees_with_oracle_on_two_atoms(self):
        family = enumerate_formulas(literals_over(["p", "q"]), 2, CL1_CONNECTIVES)
        for f in family:
            provable = isinstance(decide(f, SystemId.CL1), Provable)
            assert provable == uniformly_winnable(f), f


class TestChecker:
    def test_rejects_swapped_rule(self):
        proof = prove(CL1_EXAMPLE)
        steps = list(proof.steps)
        steps[1] = replace(steps[1], rule="R1")
        result = check_proof(replace(proof, steps=tuple(steps)))
        assert not result.ok and result.step == 1

    def test_rejects_forward_premise(self):
        proof = prove(CL1_EXAMPLE)
        steps = list(proof.steps)
        steps[1] = replace(steps[1], premises=(3,))
        result = check_proof(replace(proof, steps=tuple(steps)))
        assert not result.ok and "precede" in result.clause

    def test_rejects_wrong_target(self):
        proof = replace(prove("p | ~p"), target=parse("q | ~q"))
        assert not check_proof(proof)

    def test_rule3_only_in_cl2(self):
        proof = prove("P & P -> P", SystemId.CL2)
        result = check_proof(proof, SystemId.CL1)
        assert not result.ok

    def test_extra_step_is_rejected(self):
        proof = prove("p | ~p")
        bogus = BFStep(parse("q"), "R1")
        assert not check_proof(replace(proof, steps=(bogus,) + proof.steps))

    def test_json_schema(self):
        proof = prove("P & P -> P", SystemId.CL2)
        data = json.loads(dumps(proof))
        assert data["system"] == "cl2"
        assert [s["rule"] for s in data["steps"]] == ["R1", "R3"]
        assert data["steps"][1]["detail"]["fresh"] == "p"
        assert check_proof(proof_from_json(data))
        assert proof_to_json(proof_from_json(data)) == data

    def test_malformed_json(self):
        with pytest.raises(SchemaError):
            proof_from_json({"system": "cl1", "target": "p"})


class TestStrategies:
    def _verified(self, text, system=SystemId.CL1):
        proof = prove(text, system)
        strategy = extract_strategy(proof)
        target = normalize(parse(text))
        for itp in elementary_interpretations(target):
            g = interpret(target, itp)
            assert verify_strategy(g, strategy), itp.describe()
            for adversary in iter_adversaries(g):
                assert play_match(g, strategy, adversary).winner.value == "T"

    def test_cl1_worked_strategy(self):
        self._verified(CL1_EXAMPLE)

    @pytest.mark.parametrize("text", ["p | ~p", "(p + q) | ~p", "~p * q | (p + ~q)", "(p * ~p) | (p + ~p)"])
    def test_small_strategies(self, text):
        self._verified(text)

    def test_every_provable_one_atom_formula(self):
        for f in enumerate_formulas(literals_over(["p"]), 2, CL1_CONNECTIVES):
            verdict = decide(f, SystemId.CL1)
            if not isinstance(verdict, Provable):
                continue
            strategy = extract_strategy(verdict.proof)
            for itp in elementary_interpretations(f):
                assert verify_strategy(interpret(f, itp), strategy), f

    def test_recurrence_is_rejected(self):
        proof = prove("p | ~p")
        with pytest.raises(LanguageGateError):
            extract_strategy(replace(proof, target=parse("!P | ~p")))


CL2_STRATEGIES = [
    "P & P -> P",
    "(P * Q) -> (P + Q)",
    "P & (Q * R) -> (P & Q) * (P & R)",
    "(P + Q) & R -> (P & R) + (Q & R)",
]


def catalogue_sound(f, proof):
    strategy = extract_strategy(proof)
    target = normalize(f)
    for itp in catalogue_interpretations(target, default_catalogue()):
        if not verify_strategy(interpret(target, itp), strategy):
            return itp.describe()
    return None


@pytest.mark.parametrize("text", CL2_STRATEGIES)
def test_cl2_strategy_wins_every_catalogue_game(text):
    proof = prove(text, SystemId.CL2)
    assert catalogue_sound(parse(text), proof) is None


def test_cl2_strategy_against_random_adversaries():
    # choice moves share their prefix with the literal they pick
    text = "(P * Q) -> (P + Q)"
    strategy = extract_strategy(prove(text, SystemId.CL2))
    target = normalize(parse(text))
    for itp in catalogue_interpretations(target, default_catalogue(), ["QUIZ", "DUEL"]):
        game = interpret(target, itp)
        for adversary in iter_adversaries(game, seeds=range(6)):
            assert play_match(game, strategy, adversary).winner.value == "T", itp.describe()


def status(f, system):
    return decide(f, system).status


def sample(seed, names, count, max_connectives):
    rng = random.Random(seed)
    leaves = literals_over(names)
    return [random_formula(rng, leaves, max_connectives) for _ in range(count)]


class TestProperties:
    def test_cl2_is_conservative_over_cl1(self):
        for f in sample(11, ["p", "q"], 120, 4):
            assert status(f, SystemId.CL2) == status(f, SystemId.CL1), f

    @pytest.mark.parametrize(
        "mapping",
        [
            {Atom("p"): Atom("q"), Atom("q"): Atom("p")},
            {Atom("q"): Atom("p")},
            {Atom("p"): Atom("r")},
        ],
    )
    def test_cl1_instances_of_theorems_are_theorems(self, mapping):
        for f in sample(12, ["p", "q"], 150, 4):
            if isinstance(decide(f, SystemId.CL1), Provable):
                instance = rename_atoms(f, mapping)
                assert isinstance(decide(instance, SystemId.CL1), Provable), (f, instance)

    @pytest.mark.parametrize(
        "mapping",
        [
            {Atom("P"): Atom("Q"), Atom("Q"): Atom("P")},
            {Atom("Q"): Atom("P")},
            {Atom("p"): Atom("q")},
        ],
    )
    def test_cl2_instances_of_theorems_are_theorems(self, mapping):
        for f in sample(13, ["P", "Q", "p"], 120, 4):
            if isinstance(decide(f, SystemId.CL2), Provable):
                instance = rename_atoms(f, mapping)
                assert isinstance(decide(instance, SystemId.CL2), Provable), (f, instance)

    def test_cl2_strategies_on_small_formulas(self):
        for f in sample(14, ["P", "Q", "p"], 60, 2):
            verdict = decide(f, SystemId.CL2)
            if isinstance(verdict, Provable):
                assert catalogue_sound(f, verdict.proof) is None, f

    @pytest.mark.slow
    def test_cl2_strategies_on_random_formulas(self):
        for f in sample(15, ["P", "Q", "p"], 150, 4):
            verdict = decide(f, SystemId.CL2)
            if isinstance(verdict, Provable):
                assert catalogue_sound(f, verdict.proof) is None, f

    @pytest.mark.slow
    def test_cl1_oracle_agreement_on_random_formulas(self):
        for f in sample(16, ["p", "q", "r"], 500, 6):
            verdict = decide(f, SystemId.CL1)
            assert isinstance(verdict, Provable) == uniformly_winnable(f), f

    @pytest.mark.slow
    def test_cl1_strategies_on_random_formulas(self):
        for f in sample(16, ["p", "q", "r"], 500, 6):
            verdict = decide(f, SystemId.CL1)
            if not isinstance(verdict, Provable):
                continue
            strategy = extract_strategy(verdict.proof)
            for itp in elementary_interpretations(f):
                assert verify_strategy(interpret(f, itp), strategy), (f, itp.describe())
