from src.logic.parsers.formula_parser import FormulaParser, FormulaTokenizer, parse, render

__all__ = ["FormulaParser", "FormulaTokenizer", "parse", "render"]
