"""
CoL Toolkit - Errors
====================
One exception hierarchy for every layer of the toolkit. The CLI maps these
onto its exit codes.
"""
from __future__ import annotations

from typing import Any, Dict, Optional


class CoLError(Exception):
    """Base class for all toolkit errors"""


class FormulaSyntaxError(CoLError):
    """Unknown token, unexpected token or unbalanced input"""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.message = message
        self.line = line
        self.column = column


class LanguageGateError(CoLError):
    """Formula uses something outside a system's signature"""

    def __init__(self, system: str, reason: str):
        super().__init__(f"{system}: {reason}")
        self.system = system
        self.reason = reason


class IllegalPositionError(CoLError):
    pass


class ResourceExhausted(CoLError):
    """A configured budget, bound or timeout tripped"""

    def __init__(self, reason: str, stats: Optional[Dict[str, Any]] = None):
        super().__init__(reason)
        self.reason = reason
        self.stats = dict(stats or {})


class SchemaError(CoLError):
    """Malformed proof, cirquent, game, interpretation or manifest data"""


class RuleApplicationError(CoLError):
    """Rule parameters do not fit the cirquent they are applied to"""

    def __init__(self, rule: str, clause: str):
        super().__init__(f"{rule}: {clause}")
        self.rule = rule
        self.clause = clause


class ConfigError(CoLError):
    pass


class UnmappedAtomError(CoLError):
    """An interpretation does not cover an atom of the formula"""
