"""Verilog subset front end: lexer, parser and statement table."""

from src.frontend.lexer import tokenize
from src.frontend.parser import parse_design
from src.frontend.statements import StatementTable, enumerate_statements

__all__ = ["tokenize", "parse_design", "enumerate_statements", "StatementTable"]
