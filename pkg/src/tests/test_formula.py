import random

import numpy as np
import pytest

from src.logic.classical import elementarise, eval_classical, is_elementary, is_stable, is_tautology, truth_table
from src.logic.enumeration import (
    CLASSICAL_CONNECTIVES,
    enumerate_formulas,
    formulas_with_literal_bound,
    literals_over,
    random_formula,
)
from src.logic.errors import FormulaSyntaxError, LanguageGateError
from src.logic.formula import (
    Atom,
    Brec,
    Chand,
    Chor,
    Cobrec,
    ConnectiveKind,
    FalseConst,
    Impl,
    Literal,
    Pand,
    Por,
    SystemId,
    TrueConst,
    check_language,
    lit,
)
from src.logic.normalizer import atoms, flatten, is_normalized, normalize, recurrence_complexity, rename_atoms
from src.logic.occurrences import literal_sites, move_prefix, replace_at, subformula_at, surface_sites
from src.logic.parsers.formula_parser import parse, render
from src.tests.conftest import CL1_EXAMPLE


class TestParser:
    def test_precedence_levels(self):
        assert parse("p & q | r") == Por((Pand((lit("p"), lit("q"))), lit("r")))
        assert parse("p | q + r") == Chor((Por((lit("p"), lit("q"))), lit("r")))
        assert parse("p * q | r") == Por((Chand((lit("p"), lit("q"))), lit("r")))

    def test_implication_is_right_associative(self):
        assert parse("p -> q -> r") == Impl(lit("p"), Impl(lit("q"), lit("r")))

    def test_binary_connectives_keep_grouping(self):
        assert parse("p & q & r") == Pand((Pand((lit("p"), lit("q"))), lit("r")))
        assert parse("p & (q & r)") == Pand((lit("p"), Pand((lit("q"), lit("r")))))

    def test_negated_atom_is_a_literal(self):
        assert parse("~p") == Literal(Atom("p"), True)
        assert parse("!P") == Brec(lit("P"))
        assert parse("?~P") == Cobrec(lit("P", True))

    def test_unicode_input(self):
        assert parse("¬p ∨ (p ⊓ q)") == parse("~p | (p * q)")
        assert parse("⊤ ∧ ⊥") == Pand((TrueConst(), FalseConst()))

    def test_atom_kinds_follow_case(self):
        assert not Atom("p").is_general
        assert Atom("P").is_general

    @pytest.mark.parametrize("text", ["p &", "(p | q", "p q", "p $ q", "", "01"])
    def test_syntax_errors(self, text):
        with pytest.raises(FormulaSyntaxError):
            parse(text)

    def test_syntax_error_position(self):
        with pytest.raises(FormulaSyntaxError) as info:
            parse("p &\n  $")
        assert (info.value.line, info.value.column) == (2, 3)

    @pytest.mark.parametrize(
        "text",
        [CL1_EXAMPLE, "!F -> !F & !F", "?!F -> !?F", "(p + q) * ~r", "P o-> Q", "1 | ~(p & 0)"],
    )
    def test_render_parses_back(self, text):
        f = parse(text)
        assert parse(render(f)) == f
        assert parse(render(f, "unicode")) == f


class TestNormalize:
    def test_implication_and_de_morgan(self):
        assert normalize(parse("~(p & q) -> r")) == Por((Pand((lit("p"), lit("q"))), lit("r")))
        assert normalize(parse("~(P * Q)")) == Chor((lit("P", True), lit("Q", True)))
        assert normalize(parse("~!P")) == Cobrec(lit("P", True))

    def test_brimpl_expands_to_corecurrence(self):
        assert normalize(parse("P o-> Q")) == Por((Cobrec(lit("P", True)), lit("Q")))

    def test_idempotent(self):
        f = normalize(parse("~(!F -> (F & ~?G))"))
        assert is_normalized(f)
        assert normalize(f) == f

    def test_flatten_only_on_request(self):
        f = parse("p & (q & r)")
        assert normalize(f) == f
        assert flatten(f) == Pand((lit("p"), lit("q"), lit("r")))

    def test_atoms_and_counts(self):
        f = parse("!F -> !F & !F")
        assert atoms(f) == (Atom("F"),)
        assert recurrence_complexity(normalize(f)) == 3

    def test_rename(self):
        f = rename_atoms(parse("p | ~q"), {Atom("q"): Atom("p")})
        assert f == parse("p | ~p")


class TestOccurrences:
    def test_surface_flags(self):
        f = normalize(parse("p | (q * !r)"))
        sites = {site.path: site for site in literal_sites(f)}
        assert sites[(0,)].surface
        assert not sites[(1, 0)].surface and not sites[(1, 0)].semisurface
        choice = surface_sites(f, ConnectiveKind.CHAND)
        assert [site.path for site in choice] == [(1,)]

    def test_replace_and_lookup(self):
        f = parse("p | (q * r)")
        g = replace_at(f, (1,), lit("s"))
        assert g == parse("p | s")
        assert subformula_at(f, (1, 1)) == lit("r")
        with pytest.raises(IndexError):
            subformula_at(f, (0, 0))

    def test_move_prefix_skips_choice_nodes(self):
        f = parse("(p * q) | (r & s)")
        assert move_prefix(f, (1, 0)) == "1.0."
        assert move_prefix(f, (0, 1)) == "0."


class TestLanguageGate:
    def test_cl1_rejects_general_atoms(self):
        with pytest.raises(LanguageGateError):
            check_language(parse("P | ~P"), SystemId.CL1)
        check_language(parse("P | ~P"), SystemId.CL2)

    def test_cl5_rejects_choice_and_constants(self):
        with pytest.raises(LanguageGateError):
            check_language(parse("P * Q"), SystemId.CL5)
        with pytest.raises(LanguageGateError):
            check_language(parse("P | 1"), SystemId.CL5)

    def test_cl15_needs_general_atoms(self):
        check_language(normalize(parse("!F -> !!F")), SystemId.CL15)
        with pytest.raises(LanguageGateError):
            check_language(parse("!p"), SystemId.CL15)

    def test_sugar_must_be_normalized_first(self):
        with pytest.raises(LanguageGateError):
            check_language(parse("p -> p"), SystemId.CL1)


class TestClassical:
    def test_truth_table_row_order(self):
        table = truth_table(parse("p & ~q"), [Atom("p"), Atom("q")])
        assert table.tolist() == [False, True, False, False]
        assert table.dtype == np.bool_

    def test_tautologies(self):
        assert is_tautology(parse("p | ~p"))
        assert not is_tautology(parse("p & ~p"))
        assert is_tautology(normalize(parse(CL1_EXAMPLE.replace("*", "&"))))

    def test_eval_matches_table(self):
        f = parse("(p | q) & ~r")
        order = list(atoms(f))
        table = truth_table(f, order)
        for row in range(8):
            assignment = {atom: bool((row >> k) & 1) for k, atom in enumerate(order)}
            assert eval_classical(f, assignment) == table[row]

    def test_elementarisation(self):
        f = normalize(parse(CL1_EXAMPLE))
        assert not is_elementary(f)
        assert elementarise(f) == parse("0 | (~p | 1)")
        assert is_stable(f)
        assert elementarise(parse("P | (p + q)")) == parse("0 | 0")
        assert not is_stable(parse("p + ~p"))
        assert is_stable(parse("p | ~p"))


class TestEnumeration:
    def test_counts(self):
        leaves = literals_over(["p"])
        family = list(enumerate_formulas(leaves, 1, CLASSICAL_CONNECTIVES))
        # two leaves, plus 2 connectives x 2 x 2 pairs
        assert len(family) == 2 + 8

    def test_literal_bound(self):
        for f in formulas_with_literal_bound(["P"], 3):
            assert sum(1 for site in literal_sites(f)) <= 3

    def test_random_is_seeded(self):
        leaves = literals_over(["p", "q"])
        first = [random_formula(random.Random(7), leaves, 5) for _ in range(3)]
        second = [random_formula(random.Random(7), leaves, 5) for _ in range(3)]
        assert first == second
