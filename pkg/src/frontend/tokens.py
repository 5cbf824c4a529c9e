"""
Token types for the synthesizable Verilog subset.
"""

from dataclasses import dataclass
from enum import Enum

from config.analysis_rules import UNSUPPORTED_KEYWORDS
from src.errors import SourcePos


class TokenKind(str, Enum):
    KEYWORD = "keyword"
    IDENTIFIER = "identifier"
    NUMBER = "number"
    OPERATOR = "operator"
    PUNCTUATION = "punctuation"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    lexeme: str
    pos: SourcePos
    # Number literals only
    value: int | None = None
    width: int | None = None
    sized: bool = False

    @property
    def end_column(self) -> int:
        return self.pos.column + len(self.lexeme)

    def is_(self, kind: TokenKind, lexeme: str | None = None) -> bool:
        return self.kind is kind and (lexeme is None or self.lexeme == lexeme)

    def __repr__(self) -> str:
        return f"Token({self.kind.name}, {self.lexeme!r}, L{self.pos.line}:{self.pos.column})"


SUBSET_KEYWORDS: frozenset[str] = frozenset(
    {
        "module",
        "endmodule",
        "input",
        "output",
        "wire",
        "reg",
        "parameter",
        "localparam",
        "assign",
        "always",
        "begin",
        "end",
        "if",
        "else",
        "case",
        "endcase",
        "default",
        "posedge",
        "negedge",
        "or",
    }
)

# Unsupported keywords still lex as keywords so the parser can name them.
KEYWORDS: frozenset[str] = SUBSET_KEYWORDS | UNSUPPORTED_KEYWORDS

# Longest first; the lexer tries them in this order.
OPERATORS: tuple[str, ...] = (
    "<<<",
    ">>>",
    "===",
    "!==",
    "<<",
    ">>",
    "==",
    "!=",
    "<=",
    ">=",
    "&&",
    "||",
    "&",
    "|",
    "^",
    "~",
    "+",
    "-",
    "*",
    "/",
    "%",
    "<",
    ">",
    "!",
    "?",
    "=",
    "@",
    "#",
)

PUNCTUATION: frozenset[str] = frozenset("()[]{};,:.")
