"""
CoL Toolkit - Formula Parser
============================
Tokenizer, precedence-climbing parser and printer for the ASCII formula
grammar (Unicode aliases accepted on input).

    unary (tightest):  ~  !  ?          (negation, brecurrence, cobrecurrence)
    binary:            &  level 5       (parallel and)
                       *  level 4       (choice and)
                       |  level 3       (parallel or)
                       +  level 2       (choice or)
                       -> o->  level 1  (right associative)

Binary connectives keep the grouping the user wrote; nothing is flattened.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

from src.logic.errors import FormulaSyntaxError
from src.logic.formula import (
    Atom,
    Brec,
    Brimpl,
    Chand,
    Chor,
    Cobrec,
    FalseConst,
    Formula,
    Impl,
    Literal,
    Neg,
    Pand,
    Por,
    TrueConst,
)

UNICODE_ALIASES = {
    "¬": "~",
    "∧": "&",
    "∨": "|",
    "⊓": "*",
    "⊔": "+",
    "○": "!",
    "⫰": "?",
    "→": "->",
    "◦–": "o->",
    "⊤": "1",
    "⊥": "0",
}

# (symbol, level, right_assoc, constructor)
BINARY_OPERATORS: Dict[str, Tuple[int, bool, Callable[[Formula, Formula], Formula]]] = {
    "&": (5, False, lambda a, b: Pand((a, b))),
    "*": (4, False, lambda a, b: Chand((a, b))),
    "|": (3, False, lambda a, b: Por((a, b))),
    "+": (2, False, lambda a, b: Chor((a, b))),
    "->": (1, True, Impl),
    "o->": (1, True, Brimpl),
}

UNARY_OPERATORS = ("~", "!", "?")

_SYMBOLS = {
    "ascii": {
        Pand: "&", Chand: "*", Por: "|", Chor: "+", Impl: "->", Brimpl: "o->",
        Neg: "~", Brec: "!", Cobrec: "?", TrueConst: "1", FalseConst: "0",
    },
    "unicode": {
        Pand: "∧", Chand: "⊓", Por: "∨", Chor: "⊔", Impl: "→", Brimpl: "◦–",
        Neg: "¬", Brec: "○", Cobrec: "⫰", TrueConst: "⊤", FalseConst: "⊥",
    },
}

_LEVELS = {Pand: 5, Chand: 4, Por: 3, Chor: 2, Impl: 1, Brimpl: 1}


@dataclass(frozen=True)
class Token:
    kind: str  # "atom", "const", "op", "lparen", "rparen", "end"
    text: str
    line: int
    column: int


class FormulaTokenizer:
    """Split formula text into tokens, tracking line and column"""

    def __init__(self, text: str):
        self.text = text

    def tokens(self) -> List[Token]:
        text = self.text
        out: List[Token] = []
        i, line, col = 0, 1, 1
        while i < len(text):
            ch = text[i]
            if ch == "\n":
                i, line, col = i + 1, line + 1, 1
                continue
            if ch.isspace():
                i, col = i + 1, col + 1
                continue

            alias = next((a for a in UNICODE_ALIASES if text.startswith(a, i)), None)
            if alias is not None:
                symbol = UNICODE_ALIASES[alias]
                kind = "const" if symbol in ("0", "1") else "op"
                out.append(Token(kind, symbol, line, col))
                i, col = i + len(alias), col + len(alias)
                continue

            # "o->" wins over an atom named o
            if text.startswith("o->", i):
                out.append(Token("op", "o->", line, col))
                i, col = i + 3, col + 3
                continue
            if text.startswith("->", i):
                out.append(Token("op", "->", line, col))
                i, col = i + 2, col + 2
                continue
            if ch in "&*|+" or ch in UNARY_OPERATORS:
                out.append(Token("op", ch, line, col))
                i, col = i + 1, col + 1
                continue
            if ch == "(":
                out.append(Token("lparen", ch, line, col))
                i, col = i + 1, col + 1
                continue
            if ch == ")":
                out.append(Token("rparen", ch, line, col))
                i, col = i + 1, col + 1
                continue
            if ch in "01":
                if i + 1 < len(text) and (text[i + 1].isalnum() or text[i + 1] == "_"):
                    raise FormulaSyntaxError(f"unknown token starting with {ch!r}", line, col)
                out.append(Token("const", ch, line, col))
                i, col = i + 1, col + 1
                continue
            if ch.isascii() and ch.isalpha():
                j = i + 1
                while j < len(text) and text[j].isascii() and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                out.append(Token("atom", text[i:j], line, col))
                col += j - i
                i = j
                continue
            raise FormulaSyntaxError(f"unknown token {ch!r}", line, col)
        out.append(Token("end", "", line, col))
        return out


class FormulaParser:
    """Precedence-climbing parser over FormulaTokenizer output"""

    def __init__(self, text: str):
        self.tokens = FormulaTokenizer(text).tokens()
        self.index = 0

    def _peek(self) -> Token:
        return self.tokens[self.index]

    def _advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def parse(self) -> Formula:
        if self._peek().kind == "end":
            token = self._peek()
            raise FormulaSyntaxError("empty formula", token.line, token.column)
        result = self._expression(1)
        token = self._peek()
        if token.kind != "end":
            raise FormulaSyntaxError(f"unexpected token {token.text!r}", token.line, token.column)
        return result

    def _expression(self, min_level: int) -> Formula:
        left = self._unary()
        while True:
            token = self._peek()
            if token.kind != "op" or token.text not in BINARY_OPERATORS:
                return left
            level, right_assoc, build = BINARY_OPERATORS[token.text]
            if level < min_level:
                return left
            self._advance()
            right = self._expression(level if right_assoc else level + 1)
            left = build(left, right)

    def _unary(self) -> Formula:
        token = self._peek()
        if token.kind == "op" and token.text in UNARY_OPERATORS:
            self._advance()
            operand = self._unary()
            if token.text == "!":
                return Brec(operand)
            if token.text == "?":
                return Cobrec(operand)
            if isinstance(operand, Literal) and not operand.negated:
                return operand.flipped()
            return Neg(operand)
        return self._primary()

    def _primary(self) -> Formula:
        token = self._advance()
        if token.kind == "atom":
            return Literal(Atom(token.text))
        if token.kind == "const":
            return TrueConst() if token.text == "1" else FalseConst()
        if token.kind == "lparen":
            inner = self._expression(1)
            closing = self._advance()
            if closing.kind != "rparen":
                raise FormulaSyntaxError("expected ')'", closing.line, closing.column)
            return inner
        if token.kind == "end":
            raise FormulaSyntaxError("unexpected end of input", token.line, token.column)
        raise FormulaSyntaxError(f"unexpected token {token.text!r}", token.line, token.column)


def parse(text: str) -> Formula:
    """Parse formula text into an AST, keeping sugar nodes and grouping."""
    return FormulaParser(text).parse()


def render(f: Formula, style: str = "ascii") -> str:
    """Print f so that parse(render(f)) rebuilds the same binary AST."""
    symbols = _SYMBOLS[style]
    return _render(f, symbols)


def _render(f: Formula, symbols: Dict[type, str]) -> str:
    if isinstance(f, (TrueConst, FalseConst)):
        return symbols[type(f)]
    if isinstance(f, Literal):
        prefix = symbols[Neg] if f.negated else ""
        return prefix + f.atom.name
    if isinstance(f, (Neg, Brec, Cobrec)):
        return symbols[type(f)] + _operand(f.arg, symbols)
    level = _LEVELS[type(f)]
    op = f" {symbols[type(f)]} "
    if isinstance(f, (Impl, Brimpl)):
        left = _wrap(f.lhs, symbols, lambda child: child <= level)
        right = _wrap(f.rhs, symbols, lambda child: child < level)
        return left + op + right
    parts = [_wrap(f.args[0], symbols, lambda child: child < level)]
    parts += [_wrap(arg, symbols, lambda child: child <= level) for arg in f.args[1:]]
    return op.join(parts)


def _operand(f: Formula, symbols: Dict[type, str]) -> str:
    text = _render(f, symbols)
    return f"({text})" if type(f) in _LEVELS else text


def _wrap(f: Formula, symbols: Dict[type, str], needs_parens: Callable[[int], bool]) -> str:
    text = _render(f, symbols)
    child_level: Optional[int] = _LEVELS.get(type(f))
    if child_level is not None and needs_parens(child_level):
        return f"({text})"
    return text


if __name__ == "__main__":
    sample = "((p->q)*(p->r)) -> (p->(q*r))"
    tree = parse(sample)
    print(f"Parsed:  {tree!r}")
    print(f"ASCII:   {render(tree)}")
    print(f"Unicode: {render(tree, 'unicode')}")
