import json
import random
from dataclasses import replace

import pytest

from src.cirquents.cl15 import (
    TAGS,
    CL15Decider,
    Cirquent15,
    SearchConfig,
    SearchMode,
    apply_forward,
    axiom,
    axiom_match,
    canonical_key,
    check_proof,
    cirquent_from_json,
    cirquent_to_json,
    complexity,
    decide,
    enumerate_premises,
    essentially_identical,
    expand_closure,
    find_closure,
    formula_to_target,
    proof_from_json,
    proof_to_json,
    rule,
    to_dot,
)
from src.cirquents.cl15.canonical import formula_signature
from src.cirquents.cl15.rules import check_transition
from src.logic.errors import LanguageGateError, RuleApplicationError, SchemaError
from src.logic.enumeration import CLASSICAL_CONNECTIVES, random_formula
from src.logic.formula import Cobrec, walk
from src.logic.normalizer import normalize, recurrence_complexity
from src.logic.parsers.formula_parser import parse
from src.logic.verdicts import Exhausted, Provable, Unprovable


def cq(oformulas, under, over):
    return Cirquent15(
        tuple(normalize(parse(t)) for t in oformulas),
        tuple(frozenset(g) for g in under),
        tuple(frozenset(g) for g in over),
    )


# the cirquent just above the contraction in the worked duplication proof
SHARED = cq(["?~F", "?~F", "!F", "!F"], [{0, 1, 2}, {0, 1, 3}], [{0, 1, 2, 3}])


def load(proof_path, name):
    return proof_from_json(json.loads(proof_path(name).read_text(encoding="utf-8")))


class TestCirquent:
    def test_target_and_axiom(self):
        assert formula_to_target(parse("F -> F")) == cq(["~F | F"], [{0}], [{0}])
        a = axiom([parse("F"), parse("!G")])
        assert a == cq(["~F", "F", "?~G", "!G"], [{0, 1}, {2, 3}], [{0, 1}, {2, 3}])
        assert axiom_match(a)
        assert not axiom_match(SHARED)

    @pytest.mark.parametrize(
        "under, over",
        [([{0}], [set()]), ([{0}], [{0}, {3}]), ([{0}], [{1}]), ([], [{0, 1}])],
    )
    def test_well_formedness(self, under, over):
        with pytest.raises(ValueError):
            cq(["~F", "F"], under, over)

    def test_gate(self):
        with pytest.raises(LanguageGateError):
            formula_to_target(parse("!p | ~p"))
        with pytest.raises(LanguageGateError):
            formula_to_target(parse("F * G"))

    def test_complexity(self):
        assert complexity(SHARED) == 4

    def test_json_and_dot(self):
        assert cirquent_from_json(json.loads(json.dumps(cirquent_to_json(SHARED)))) == SHARED
        with pytest.raises(SchemaError):
            cirquent_from_json({"oformulas": ["F"], "undergroups": [[]], "overgroups": [[0]]})
        dot = to_dot(SHARED)
        assert "u1 -- f3;" in dot and "f3 -- o0;" in dot


class TestRules:
    def test_or_intro(self):
        assert apply_forward(axiom([parse("F")]), rule("OrI", index=0)) == formula_to_target(parse("F -> F"))

    def test_recurrence_needs_a_private_overgroup(self):
        c = cq(["~F", "F"], [{0, 1}], [{0, 1}, {1}])
        assert apply_forward(c, rule("RecI", index=1, overgroup=1)) == cq(["~F", "!F"], [{0, 1}], [{0, 1}])
        with pytest.raises(RuleApplicationError):
            apply_forward(c, rule("RecI", index=1, overgroup=0))

    def test_corecurrence_keeps_every_oformula_covered(self):
        with pytest.raises(RuleApplicationError):
            apply_forward(axiom([parse("F")]), rule("CorecI", index=0, overgroups=[0]))

    def test_contraction(self):
        expected = cq(["?~F", "!F", "!F"], [{0, 1}, {0, 2}], [{0, 1, 2}])
        assert apply_forward(SHARED, rule("C", index=0)) == expected
        with pytest.raises(RuleApplicationError):
            apply_forward(SHARED, rule("C", index=2))

    def test_and_intro_needs_twin_undergroups(self):
        c = cq(["?~F", "!F", "!F"], [{0, 1}, {0, 2}], [{0, 1, 2}])
        assert apply_forward(c, rule("AndI", index=1)) == cq(["?~F", "!F & !F"], [{0, 1}], [{0, 1}])
        with pytest.raises(RuleApplicationError):
            apply_forward(cq(["?~F", "!F", "!F"], [{0, 1}, {2}], [{0, 1, 2}]), rule("AndI", index=1))

    def test_weakening_inserts_an_oformula(self):
        c = cq(["~F", "F"], [{0, 1}], [{0, 1}])
        r = rule("W", undergroup=0, oformula=2, formula=parse("G"), overgroups=[1], new_overgroups=[1])
        assert apply_forward(c, r) == cq(["~F", "F", "G"], [{0, 1, 2}], [{0, 1}, {2}])

    def test_unknown_tag(self):
        with pytest.raises(RuleApplicationError):
            rule("Cut", index=0)

    @pytest.mark.parametrize("tag", TAGS)
    @pytest.mark.parametrize(
        "c",
        [
            SHARED,
            cq(["?~F", "!F & !F"], [{0, 1}], [{0, 1}]),
            cq(["~F", "F", "G"], [{0, 1, 2}], [{0, 1}, {2}]),
            cq(["?~F", "?F"], [{0, 1}], [{0, 1}, {0}, {1}]),
        ],
    )
    def test_backward_premises_lead_back(self, c, tag):
        for premise, r in enumerate_premises(c, tag):
            assert check_transition(premise, c, r) is None, r

    def test_rule_json(self):
        r = rule("CorecI", index=1, overgroups=[2, 0])
        assert r.to_json() == {"name": "CorecI", "params": {"index": 1, "overgroups": [0, 2]}}
        assert type(r).from_json(r.to_json()) == r


class TestCanonical:
    def test_exchange_is_invisible(self):
        swapped = apply_forward(SHARED, rule("E-oformula", index=1))
        assert swapped != SHARED
        assert essentially_identical(SHARED, swapped)
        regrouped = apply_forward(SHARED, rule("E-under", index=0))
        assert canonical_key(regrouped) == canonical_key(SHARED)

    def test_structure_is_visible(self):
        merged = cq(["?~F", "!F", "?~F", "!F"], [{0, 1}, {2, 3}], [{0, 1, 2, 3}])
        assert not essentially_identical(SHARED, merged)

    def test_formula_symmetry_flag(self):
        a, b = parse("P | (Q | R)"), parse("(R | P) | Q")
        assert formula_signature(a) != formula_signature(b)
        assert formula_signature(a, True) == formula_signature(b, True)


class TestClosure:
    def test_witness_pairs_are_disjoint(self):
        witness = find_closure(SHARED)
        assert witness is not None
        assert witness.pairs == ((0, 2), (1, 3))
        assert witness.assignment == (0, 1)

    def test_expansion_is_a_checked_derivation(self):
        derivation = expand_closure(SHARED, find_closure(SHARED))
        assert axiom_match(derivation[0][0]) and derivation[0][1] is None
        for (above, _), (below, r) in zip(derivation, derivation[1:]):
            assert check_transition(above, below, r) is None
        assert derivation[-1][0] == SHARED

    def test_no_closure_without_matching_overgroups(self):
        assert find_closure(cq(["~F", "F"], [{0, 1}], [{0, 1}, {1}])) is None
        assert find_closure(cq(["?~F", "F"], [{0, 1}], [{0, 1}])) is None


class TestDecider:
    @pytest.mark.parametrize("text", ["F -> F", "!F -> !!F", "?!F -> !?F", "!F -> F"])
    def test_provable(self, text):
        verdict = decide(parse(text))
        assert isinstance(verdict, Provable)
        assert check_proof(verdict.proof)

    def test_duplication_costs_one_contraction(self):
        without = decide(parse("!F -> !F & !F"), SearchConfig(contraction_budget=0))
        assert isinstance(without, Unprovable)
        assert without.bounds["contraction_budget"] == 0
        verdict = decide(parse("!F -> !F & !F"), SearchConfig(contraction_budget=1))
        assert isinstance(verdict, Provable)
        assert verdict.proof.count("C") == 1
        assert check_proof(verdict.proof)

    def test_cl15c_mode_has_no_contraction(self):
        config = SearchConfig(mode="cl15c", contraction_budget=3)
        assert config.mode is SearchMode.CL15C and config.contraction_budget == 0
        assert isinstance(decide(parse("!F -> !F & !F"), config), Unprovable)

    def test_plain_duplication_is_unprovable(self):
        assert isinstance(decide(parse("F -> F & F")), Unprovable)

    def test_node_budget(self):
        verdict = decide(parse("!F -> !!F"), SearchConfig(max_nodes=1))
        assert isinstance(verdict, Exhausted)
        assert verdict.bounds["system"] == "cl15"

    def test_depth_limited_mode(self):
        config = SearchConfig(mode=SearchMode.DEPTH_LIMITED, max_proof_length=8)
        verdict = decide(parse("F -> F"), config)
        assert isinstance(verdict, Provable)
        assert verdict.proof.rules == ("axiom", "OrI")
        cut = decide(parse("!F -> !!F"), replace(config, max_proof_length=1))
        assert isinstance(cut, Exhausted)
        assert "proof length" in cut.reason

    def test_negative_budget(self):
        with pytest.raises(ValueError):
            SearchConfig(contraction_budget=-1)

    def test_decider_reuses_config(self):
        decider = CL15Decider(SearchConfig(contraction_budget=1))
        assert isinstance(decider.decide(parse("F -> F")), Provable)
        assert isinstance(decider.decide(parse("!F -> !F & !F")), Provable)


class TestProofFiles:
    @pytest.mark.parametrize(
        "name, contractions",
        [("cl15-contraction.json", 1), ("cl15-corecurrence-shift.json", 0), ("cl15-recurrence-doubling.json", 0)],
    )
    def test_corpus_proofs_check(self, proof_path, name, contractions):
        proof = load(proof_path, name)
        assert check_proof(proof)
        assert proof.count("C") == contractions

    def test_json_keeps_checkability(self):
        proof = decide(parse("?!F -> !?F")).proof
        data = json.loads(json.dumps(proof_to_json(proof)))
        assert data["steps"][0]["rule"] == "axiom"
        assert check_proof(proof_from_json(data))

    def test_truncated_proof(self, proof_path):
        proof = load(proof_path, "cl15-contraction.json")
        result = check_proof(replace(proof, steps=proof.steps[:-1]))
        assert not result.ok and "target" in result.clause

    def test_reordered_proof(self, proof_path):
        proof = load(proof_path, "cl15-recurrence-doubling.json")
        steps = list(proof.steps)
        steps[3], steps[4] = steps[4], steps[3]
        result = check_proof(replace(proof, steps=tuple(steps)))
        assert not result.ok and result.step == 3

    def test_first_step_must_be_an_axiom(self, proof_path):
        proof = load(proof_path, "cl15-contraction.json")
        result = check_proof(replace(proof, steps=proof.steps[1:]))
        assert not result.ok and result.step == 0

    def test_wrong_system(self):
        with pytest.raises(SchemaError):
            proof_from_json({"system": "cl5", "target": "F", "steps": []})


PROVABLE = ["F -> F", "!F -> !!F", "?!F -> !?F", "!F -> F", "!F -> !F & !F"]
EXCHANGES = ("E-oformula", "E-under", "E-over")


def cl15_sample(seed, count, max_connectives=3):
    rng = random.Random(seed)
    leaves = [normalize(parse(t)) for t in ("F", "~F", "G", "~G", "!F", "!G", "?~F")]
    return [random_formula(rng, leaves, max_connectives, CLASSICAL_CONNECTIVES) for _ in range(count)]


@pytest.fixture(scope="module")
def found_proofs():
    proofs = []
    for f in [parse(t) for t in PROVABLE] + cl15_sample(41, 40):
        verdict = decide(f)
        if isinstance(verdict, Provable):
            proofs.append(verdict.proof)
    assert len(proofs) >= len(PROVABLE)
    return proofs


def transitions(proof):
    for above, below in zip(proof.steps, proof.steps[1:]):
        yield above.cirquent, below.cirquent, below.rule


class TestAccounting:
    def test_complexity_moves_only_with_recurrence_rules(self, found_proofs, proof_path):
        proofs = found_proofs + [load(proof_path, "cl15-contraction.json")]
        seen = set()
        for proof in proofs:
            for premise, conclusion, r in transitions(proof):
                seen.add(r.tag)
                before, after = complexity(premise), complexity(conclusion)
                if r.tag in ("RecI", "CorecI"):
                    assert after == before + 1, r
                elif r.tag == "C":
                    assert before == after + recurrence_complexity(premise.oformulas[r.get("index")]), r
                elif r.tag == "W":
                    assert before <= after, r
                else:
                    assert before == after, r
        assert {"RecI", "CorecI", "C", "OrI"} <= seen

    def test_complexity_of_the_target_adds_up(self, found_proofs):
        for proof in found_proofs:
            total = complexity(proof.steps[0].cirquent) + proof.count("RecI") + proof.count("CorecI")
            for premise, conclusion, r in transitions(proof):
                if r.tag == "C":
                    total -= recurrence_complexity(premise.oformulas[r.get("index")])
                elif r.tag == "W":
                    total += complexity(conclusion) - complexity(premise)
            assert total == complexity(formula_to_target(proof.target)), proof.target

    @pytest.mark.parametrize("budget", [0, 1, pytest.param(2, marks=pytest.mark.slow)])
    def test_contractions_stay_within_the_budget(self, budget):
        for f in cl15_sample(42, 30) + [parse(t) for t in PROVABLE]:
            verdict = decide(f, SearchConfig(contraction_budget=budget))
            if isinstance(verdict, Provable):
                assert verdict.proof.count("C") <= budget, f
                assert check_proof(verdict.proof), f

    def test_larger_budget_finds_the_same_proof(self):
        for f in [parse(t) for t in PROVABLE] + cl15_sample(43, 30):
            for budget in (0, 1):
                verdict = decide(f, SearchConfig(contraction_budget=budget))
                if not isinstance(verdict, Provable):
                    continue
                larger = decide(f, SearchConfig(contraction_budget=budget + 1))
                assert isinstance(larger, Provable), f
                assert larger.proof == verdict.proof, f

    def test_modes_agree_without_corecurrence(self):
        checked = 0
        for f in cl15_sample(44, 60):
            if any(isinstance(node, Cobrec) for node in walk(normalize(f))):
                continue
            checked += 1
            bounded = decide(f, SearchConfig(contraction_budget=1))
            plain = decide(f, SearchConfig(mode=SearchMode.CL15C))
            assert bounded.status == plain.status, f
        assert checked >= 10


def exchanged(c, rng, steps=8):
    for _ in range(steps):
        options = [pair for tag in EXCHANGES for pair in enumerate_premises(c, tag)]
        if not options:
            return c
        c = rng.choice(options)[0]
    return c


class TestExchangeQuotient:
    def _cirquents(self, found_proofs, proof_path):
        proofs = found_proofs + [load(proof_path, n) for n in ("cl15-contraction.json", "cl15-recurrence-doubling.json")]
        out = {SHARED, cq(["~F", "F"], [{0, 1}, {0, 1}], [{0, 1}, {0, 1}])}
        for proof in proofs:
            out.update(step.cirquent for step in proof.steps)
        return sorted(out, key=str)

    def test_key_survives_random_exchanges(self, found_proofs, proof_path):
        rng = random.Random(46)
        for c in self._cirquents(found_proofs, proof_path):
            assert canonical_key(exchanged(c, rng)) == canonical_key(c), c

    def test_key_sees_every_other_rule(self, found_proofs, proof_path):
        tags = set()
        for c in self._cirquents(found_proofs, proof_path):
            key = canonical_key(c)
            for tag in TAGS:
                if tag in EXCHANGES:
                    continue
                for premise, r in enumerate_premises(c, tag):
                    tags.add(tag)
                    assert canonical_key(premise) != key, (c, r)
        assert {"W", "C", "D-under", "D-over", "M", "OrI", "RecI", "CorecI"} <= tags


def test_closure_never_swaps_identical_groups():
    c = cq(["~F", "F", "~G", "G"], [{0, 1}, {2, 3}], [{2, 3}, {0, 1, 2, 3}, {2, 3}])
    derivation = expand_closure(c, find_closure(c))
    assert derivation[-1][0] == c
    for (above, _), (below, r) in zip(derivation, derivation[1:]):
        assert above != below, r
        assert check_transition(above, below, r) is None
    assert [r.tag for _, r in derivation[1:]].count("E-over") == 1
