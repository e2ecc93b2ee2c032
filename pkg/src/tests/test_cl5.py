import itertools
import json
import random
from dataclasses import replace

import pytest

from src.cirquents.cl5 import (
    EMPTY,
    ShallowCirquent,
    apply_rule,
    ars_valid,
    check_proof,
    check_step,
    cirquent_from_json,
    cirquent_to_json,
    cirquent_true,
    decide,
    decide_binary,
    is_binary,
    is_normal_binary,
    ports,
    proof_from_json,
    proof_to_json,
    search_proof,
    singleton,
    to_dot,
)
from src.cirquents.cl5.ars import maximal_arrangements, validates
from src.cirquents.cl5.rules import (
    and_intro,
    axiom_empty,
    axiom_identity,
    contract,
    duplicate_down,
    duplicate_up,
    exchange_ogroup,
    exchange_oformula,
    mix,
    or_intro,
    weaken_ogroup,
    weaken_pool,
)
from src.cirquents.cl5.search import decompose
from src.logic.errors import LanguageGateError, ResourceExhausted, RuleApplicationError, SchemaError
from src.logic.enumeration import CLASSICAL_CONNECTIVES, literals_over, random_formula
from src.logic.formula import Atom, SystemId
from src.logic.normalizer import normalize, rename_atoms
from src.logic.parsers.formula_parser import parse
from src.logic.verdicts import Exhausted, Provable, Unprovable
from src.tests.conftest import BLASS, BLASS_INSTANCE

NO_DUPLICATION = "~P | (P & P)"


def cq(pool, *groups):
    return ShallowCirquent(tuple(normalize(parse(t)) for t in pool), tuple(frozenset(g) for g in groups))


class TestCirquent:
    def test_members_must_be_pool_positions(self):
        with pytest.raises(ValueError):
            cq(["P"], {1})

    def test_reading_as_formula(self):
        c = cq(["~P", "P", "Q"], {0, 1}, {2})
        assert c.as_formula() == parse("(~P | P) & Q")
        assert EMPTY.as_formula() == parse("1")

    def test_truth(self):
        c = cq(["~p", "p", "q"], {0, 1}, {2})
        assert cirquent_true(c, {Atom("p"): False, Atom("q"): True})
        assert not cirquent_true(c, {Atom("p"): True, Atom("q"): False})

    def test_ports_in_pool_order(self):
        c = singleton(parse("~P | (Q & P)"))
        assert [lit for _, lit in ports(c)] == [parse("~P"), parse("Q"), parse("P")]

    def test_json_and_dot(self):
        c = cq(["~P", "P"], {0, 1}, {1})
        assert cirquent_to_json(c) == {"pool": ["~P", "P"], "groups": [[0, 1], [1]]}
        assert cirquent_from_json(json.loads(json.dumps(cirquent_to_json(c)))) == c
        with pytest.raises(SchemaError):
            cirquent_from_json({"pool": ["P"]})
        dot = to_dot(c)
        assert dot.startswith("graph cirquent {")
        assert "g1 -- f1;" in dot


class TestRules:
    def test_axioms(self):
        assert apply_rule(axiom_empty(), []) == EMPTY
        assert apply_rule(axiom_identity(parse("P")), []) == cq(["~P", "P"], {0, 1})

    def test_mix_shifts_the_right_premise(self):
        left, right = cq(["~P", "P"], {0, 1}), cq(["~Q", "Q"], {0, 1})
        assert apply_rule(mix(), [left, right]) == cq(["~P", "P", "~Q", "Q"], {0, 1}, {2, 3})

    def test_exchange_keeps_arcs(self):
        c = cq(["~P", "P", "Q"], {0, 1}, {2})
        assert apply_rule(exchange_oformula(1), [c]) == cq(["~P", "Q", "P"], {0, 2}, {1})

    def test_weakening(self):
        c = cq(["~P", "P"], {0, 1})
        assert apply_rule(weaken_pool(0, parse("Q")), [c]) == cq(["Q", "~P", "P"], {1, 2})
        assert apply_rule(weaken_ogroup(0, 0), [cq(["Q", "~P", "P"], {1, 2})]) == cq(["Q", "~P", "P"], {0, 1, 2})
        with pytest.raises(RuleApplicationError):
            apply_rule(weaken_ogroup(0, 1), [c])

    def test_duplication(self):
        c = cq(["~P", "P"], {0, 1})
        doubled = apply_rule(duplicate_down(0), [c])
        assert doubled == cq(["~P", "P"], {0, 1}, {0, 1})
        assert apply_rule(duplicate_up(0), [doubled]) == c
        with pytest.raises(RuleApplicationError):
            apply_rule(duplicate_up(0), [cq(["~P", "P"], {0, 1}, {1})])

    def test_or_intro(self):
        assert apply_rule(or_intro(0), [cq(["~P", "P"], {0, 1})]) == singleton(parse("~P | P"))

    def test_and_intro_merges_adjacent_ogroups(self):
        c = cq(["~P", "P", "~P", "P"], {0, 1}, {2, 3})
        assert apply_rule(and_intro(1), [c]) == cq(["~P", "P & ~P", "P"], {0, 1, 2})

    def test_and_intro_needs_separate_ogroups(self):
        with pytest.raises(RuleApplicationError):
            apply_rule(and_intro(0), [cq(["~P", "P"], {0, 1})])

    def test_contraction_is_ccc_only(self):
        c = cq(["~P", "~P", "P"], {0, 2}, {1, 2})
        assert apply_rule(contract(0), [c], SystemId.CCC) == cq(["~P", "P"], {0, 1}, {0, 1})
        with pytest.raises(RuleApplicationError):
            apply_rule(contract(0), [c], SystemId.CL5)

    def test_check_step_names_the_expected_conclusion(self):
        result = check_step([cq(["~P", "P"], {0, 1})], cq(["~P | Q"], {0}), or_intro(0))
        assert not result.ok and "conclusion should be" in result.clause


class TestSearch:
    def test_blass_principle_in_cl5(self):
        verdict = search_proof(parse(BLASS), SystemId.CL5)
        assert isinstance(verdict, Provable)
        proof = verdict.proof
        assert proof.conclusion == singleton(parse(BLASS))
        assert "contract" not in proof.rules
        assert check_proof(proof)

    def test_blass_instance(self):
        verdict = search_proof(parse(BLASS_INSTANCE), SystemId.CL5)
        assert isinstance(verdict, Provable)
        assert check_proof(verdict.proof)

    def test_duplication_needs_contraction(self):
        assert isinstance(search_proof(parse(NO_DUPLICATION), SystemId.CL5), Unprovable)
        verdict = search_proof(parse("~p | (p & p)"), SystemId.CCC)
        assert isinstance(verdict, Provable)
        assert "contract" in verdict.proof.rules
        assert check_proof(verdict.proof)

    def test_decompose_to_literals(self):
        literal, trail = decompose(singleton(parse(NO_DUPLICATION)))
        assert literal == cq(["~P", "P", "P"], {0, 1}, {0, 2})
        assert [rule.name for _, rule in trail] == ["or-intro", "and-intro"]

    def test_gate(self):
        with pytest.raises(LanguageGateError):
            search_proof(parse("P * ~P"), SystemId.CL5)
        with pytest.raises(ValueError):
            search_proof(parse("P | ~P"), SystemId.CL15)

    def test_budget(self):
        verdict = search_proof(parse(BLASS), SystemId.CL5, max_nodes=1)
        assert isinstance(verdict, Exhausted)


class TestProofFiles:
    def test_corpus_proof_checks(self, proof_path):
        data = json.loads(proof_path("blass-cl5.json").read_text(encoding="utf-8"))
        proof = proof_from_json(data)
        assert proof.system is SystemId.CL5
        assert check_proof(proof)

    def test_json_keeps_checkability(self):
        proof = search_proof(parse(BLASS), SystemId.CL5).proof
        data = json.loads(json.dumps(proof_to_json(proof)))
        assert data["steps"][-1]["rule"] == "or-intro"
        assert check_proof(proof_from_json(data))

    def test_out_of_order_steps_are_rejected(self):
        proof = search_proof(parse(BLASS), SystemId.CL5).proof
        steps = list(proof.steps)
        steps[0], steps[1] = steps[1], steps[0]
        shuffled = replace(proof, steps=tuple(reversed(steps)))
        assert not check_proof(shuffled)

    def test_cl5_rejects_ccc_proof(self):
        proof = search_proof(parse("~p | (p & p)"), SystemId.CCC).proof
        result = check_proof(proof, SystemId.CL5)
        assert not result.ok
        assert "not a rule of cl5" in result.clause

    def test_wrong_target(self):
        proof = search_proof(parse("~P | P"), SystemId.CL5).proof
        assert not check_proof(replace(proof, target=parse("~Q | Q")))


class TestOracles:
    def test_binary_classification(self):
        assert is_binary(parse(BLASS))
        assert is_normal_binary(parse(BLASS))
        assert is_binary(parse("P | P")) and not is_normal_binary(parse("P | P"))
        assert not is_binary(parse(NO_DUPLICATION.replace("~P", "~P & ~P")))

    def test_binary_tautologies(self):
        assert decide_binary(parse(BLASS))
        assert decide_binary(parse(BLASS_INSTANCE))
        assert not decide_binary(parse(NO_DUPLICATION))

    def test_ccc_is_classical(self):
        assert decide(parse("~p | (p & p)"), SystemId.CCC)
        assert not decide(parse("~p & p"), SystemId.CCC)
        with pytest.raises(ValueError):
            decide(parse("~p | p"), SystemId.CL1)

    def test_occurrence_bound(self):
        with pytest.raises(ResourceExhausted):
            decide_binary(parse(BLASS), occurrence_bound=4)

    def test_ars_blass(self):
        result = ars_valid(singleton(parse(BLASS)))
        assert result.valid
        assert result.arrangements_checked == 1
        assert validates(singleton(parse(BLASS)), sorted(result.witness))

    def test_ars_refutes_duplication(self):
        c = singleton(parse(NO_DUPLICATION))
        assert len(list(maximal_arrangements(c))) == 2
        assert not ars_valid(c)

    def test_ars_port_bound(self):
        with pytest.raises(ResourceExhausted):
            ars_valid(singleton(parse(BLASS)), port_bound=4)

    @pytest.mark.parametrize("text", [BLASS, BLASS_INSTANCE, NO_DUPLICATION, "~P | P", "(~P & ~Q) | (P | Q)", "P | ~P | ~P"])
    def test_oracles_agree_with_search(self, text):
        binary = decide_binary(parse(text))
        assert bool(ars_valid(singleton(parse(text)))) == binary
        assert isinstance(search_proof(parse(text), SystemId.CL5), Provable) == binary


MODELS = [dict(zip((Atom("p"), Atom("q")), bits)) for bits in itertools.product((False, True), repeat=2)]
TWO_WAY = {"exchange-oformula", "exchange-ogroup", "duplicate-down", "duplicate-up", "contract", "or-intro", "and-intro"}


def small_cirquents(sizes=(2, 3), max_groups=2):
    literals = literals_over(["p", "q"])
    for n in sizes:
        subsets = [frozenset(s) for r in range(1, n + 1) for s in itertools.combinations(range(n), r)]
        for pool in itertools.product(literals, repeat=n):
            for k in range(1, max_groups + 1):
                for groups in itertools.product(subsets, repeat=k):
                    yield ShallowCirquent(pool, groups)


def unary_rules(c):
    n, m = len(c.pool), len(c.groups)
    for i in range(n - 1):
        yield from (exchange_oformula(i), contract(i), or_intro(i), and_intro(i))
    for i in range(m - 1):
        yield from (exchange_ogroup(i), duplicate_up(i))
    for i in range(m):
        yield duplicate_down(i)
        for j in range(n):
            yield weaken_ogroup(i, j)
    for i in range(n + 1):
        yield weaken_pool(i, normalize(parse("~q")))


def conclusions(c):
    for r in unary_rules(c):
        try:
            yield r, apply_rule(r, [c])
        except RuleApplicationError:
            continue


def conservative(r, c):
    i = r.index
    if r.name == "or-intro":
        return all((i in g) == (i + 1 in g) for g in c.groups)
    if r.name == "and-intro":
        return all(g - {i} == c.groups[k + 1] - {i + 1} for k, g in enumerate(c.groups) if i in g)
    return r.name in TWO_WAY


def classical_sample(seed, count, max_connectives, names=("P", "Q", "R")):
    rng = random.Random(seed)
    leaves = literals_over(list(names))
    return [random_formula(rng, leaves, max_connectives, CLASSICAL_CONNECTIVES) for _ in range(count)]


KNOWN = [BLASS, BLASS_INSTANCE, NO_DUPLICATION, "~P | P", "(~P & ~Q) | (P | Q)", "(P & ~P) | (~P | P)"]


def family(seed, count, max_connectives):
    return [normalize(parse(t)) for t in KNOWN] + classical_sample(seed, count, max_connectives)


class TestTruthPreservation:
    def test_axioms_are_true(self):
        identity = apply_rule(axiom_identity(normalize(parse("p & ~q"))), [])
        for model in MODELS:
            assert cirquent_true(identity, model)
            assert cirquent_true(apply_rule(axiom_empty(), []), model)

    def test_every_rule_top_down(self):
        seen = set()
        for c in small_cirquents():
            for r, d in conclusions(c):
                seen.add(r.name)
                for model in MODELS:
                    assert not cirquent_true(c, model) or cirquent_true(d, model), (str(c), str(r), model)
        assert seen >= TWO_WAY | {"weaken-pool", "weaken-ogroup"}

    def test_conservative_rules_bottom_up(self):
        seen = set()
        for c in small_cirquents():
            for r, d in conclusions(c):
                if not conservative(r, c):
                    continue
                seen.add(r.name)
                for model in MODELS:
                    assert cirquent_true(d, model) == cirquent_true(c, model), (str(c), str(r), model)
        assert seen == TWO_WAY

    def test_general_and_intro_is_not_invertible(self):
        c = cq(["p", "q", "~p"], {0, 2}, {1})
        d = apply_rule(and_intro(0), [c])
        model = {Atom("p"): False, Atom("q"): False}
        assert cirquent_true(d, model) and not cirquent_true(c, model)

    def test_mix_both_ways(self):
        parts = list(small_cirquents(sizes=(1, 2), max_groups=1))
        for left in parts:
            for right in parts:
                d = apply_rule(mix(), [left, right])
                for model in MODELS:
                    assert cirquent_true(d, model) == (cirquent_true(left, model) and cirquent_true(right, model))


class TestTheoremFamilies:
    @pytest.mark.parametrize(
        "mapping",
        [
            {Atom("Q"): Atom("P")},
            {Atom("P"): Atom("Q"), Atom("Q"): Atom("P")},
            {Atom("R"): Atom("P"), Atom("S"): Atom("Q")},
        ],
    )
    def test_instances_of_theorems_are_theorems(self, mapping):
        theorems = [f for f in family(31, 200, 4) if decide(f, SystemId.CL5)]
        assert len(theorems) >= 4
        for f in theorems:
            instance = rename_atoms(f, mapping)
            assert decide(instance, SystemId.CL5), (f, instance)
            assert isinstance(search_proof(instance, SystemId.CL5), Provable), instance

    def test_cl5_theorems_are_ccc_theorems(self):
        for f in family(32, 200, 5):
            if not decide(f, SystemId.CL5):
                continue
            assert decide(f, SystemId.CCC), f
            assert check_proof(search_proof(f, SystemId.CL5).proof, SystemId.CCC), f

    def test_oracles_agree_on_random_formulas(self):
        for f in family(33, 150, 4):
            binary = decide(f, SystemId.CL5)
            assert ars_valid(singleton(f)).valid == binary, f
            verdict = search_proof(f, SystemId.CL5)
            assert isinstance(verdict, Provable) == binary, f
            if binary:
                assert check_proof(verdict.proof), f
            ccc = search_proof(f, SystemId.CCC)
            assert isinstance(ccc, Provable) == decide(f, SystemId.CCC), f

    @pytest.mark.slow
    def test_oracles_agree_on_larger_formulas(self):
        for f in classical_sample(34, 400, 7):
            binary = decide(f, SystemId.CL5)
            assert ars_valid(singleton(f)).valid == binary, f
            verdict = search_proof(f, SystemId.CL5)
            assert isinstance(verdict, Provable) == binary, f
            if binary:
                assert check_proof(verdict.proof), f
