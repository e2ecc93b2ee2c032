"""
CoL Toolkit - Formula Layer
===========================
Formula syntax, normalization, occurrences and classical evaluation shared
by every prover.
"""
from src.logic.classical import (
    elementarise,
    eval_classical,
    eval_elementary,
    is_classical,
    is_elementary,
    is_stable,
    is_tautology,
    truth_table,
)
from src.logic.errors import (
    CoLError,
    FormulaSyntaxError,
    LanguageGateError,
    ResourceExhausted,
    SchemaError,
)
from src.logic.formula import (
    Atom,
    AtomKind,
    Brec,
    Brimpl,
    Chand,
    Chor,
    Cobrec,
    ConnectiveKind,
    FalseConst,
    Formula,
    Impl,
    Literal,
    Neg,
    Pand,
    Por,
    SystemId,
    TrueConst,
    check_language,
    lit,
)
from src.logic.normalizer import atoms, flatten, normalize, recurrence_complexity, rename_atoms
from src.logic.occurrences import Site, literal_sites, move_prefix, replace_at, subformula_at, surface_sites
from src.logic.parsers.formula_parser import parse, render

__all__ = [
    "Atom", "AtomKind", "Brec", "Brimpl", "Chand", "Chor", "Cobrec", "ConnectiveKind",
    "FalseConst", "Formula", "Impl", "Literal", "Neg", "Pand", "Por", "SystemId", "TrueConst",
    "CoLError", "FormulaSyntaxError", "LanguageGateError", "ResourceExhausted", "SchemaError",
    "Site", "atoms", "check_language", "elementarise", "eval_classical", "eval_elementary",
    "flatten", "is_classical", "is_elementary", "is_stable", "is_tautology", "lit",
    "literal_sites", "move_prefix", "normalize", "parse", "recurrence_complexity",
    "rename_atoms", "render", "replace_at", "subformula_at", "surface_sites", "truth_table",
]
