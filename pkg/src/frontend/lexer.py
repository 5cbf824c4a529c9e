"""
Lexer for the synthesizable Verilog subset.

Whitespace and comments are skipped; every token keeps its exact source
lexeme and a (line, column, byte offset) position.
"""

import re

from config.analysis_rules import HdlLimits
from src.errors import LexError, SourcePos
from src.frontend.tokens import KEYWORDS, Token, TokenKind
from src.utils.logger import get_logger

logger = get_logger(__name__)

_TOKEN_RE = re.compile(
    r"""
     (?P<ws>\s+)
    |(?P<line_comment>//[^\n]*)
    |(?P<block_comment>/\*.*?\*/)
    |(?P<number>(?:\d[\d_]*)?'[A-Za-z][0-9A-Za-z_?]*|\d[\d_]*)
    |(?P<ident>[A-Za-z_][A-Za-z0-9_$]*)
    |(?P<op><<<|>>>|===|!==|<<|>>|==|!=|<=|>=|&&|\|\||[&|^~+\-*/%<>!?=@\#])
    |(?P<punct>[()\[\]{};,:.])
    """,
    re.VERBOSE | re.DOTALL,
)

_BASES = {"b": 2, "o": 8, "d": 10, "h": 16}


def resolve_number(lexeme: str, pos: SourcePos, filename: str) -> tuple[int, int, bool]:
    """
    Parse a Verilog number literal.

    Args:
        lexeme: Literal text, e.g. `4'b1010`, `'hff`, `12`
        pos: Position of the literal (for error reporting)
        filename: Source file name (for error reporting)

    Returns:
        (value, width, sized)

    Raises:
        LexError: On 4-state digits, signed literals, bad digits or widths
    """
    raw = lexeme.replace("_", "")

    if "'" not in raw:
        value, width, sized = int(raw), HdlLimits.UNSIZED_WIDTH, False
    else:
        size_text, rest = raw.split("'", 1)
        base_char = rest[0].lower()
        if base_char == "s":
            raise LexError("signed literals are not supported", pos, filename)
        if base_char not in _BASES:
            raise LexError(f"invalid number base {rest[0]!r}", pos, filename)

        digits = rest[1:]
        if not digits:
            raise LexError("number literal has no digits", pos, filename)
        if any(ch in "xXzZ?" for ch in digits):
            raise LexError("4-state literals (x/z) are not supported", pos, filename)
        try:
            value = int(digits, _BASES[base_char])
        except ValueError:
            raise LexError(
                f"invalid digit in base-{_BASES[base_char]} literal {lexeme!r}",
                pos,
                filename,
            ) from None

        sized = bool(size_text)
        width = int(size_text) if sized else HdlLimits.UNSIZED_WIDTH
        if not HdlLimits.width_ok(width):
            raise LexError(
                f"literal width {width} outside {HdlLimits.MIN_WIDTH}..{HdlLimits.MAX_WIDTH}",
                pos,
                filename,
            )

    if value >> width:
        logger.warning(
            "literal_truncated",
            file=filename,
            line=pos.line,
            literal=lexeme,
            width=width,
        )
        value &= (1 << width) - 1

    return value, width, sized


def tokenize(source: str, filename: str = "<input>") -> list[Token]:
    """
    Split Verilog source text into tokens.

    Args:
        source: Source text
        filename: Name used in error messages

    Returns:
        Full token stream (no end-of-file token)

    Raises:
        LexError: On any character outside the subset's alphabet
    """
    tokens: list[Token] = []
    line, column, byte_offset = 1, 1, 0
    index = 0

    while index < len(source):
        match = _TOKEN_RE.match(source, index)
        pos = SourcePos(line, column, byte_offset)

        if match is None or (
            match.lastgroup == "op" and source.startswith("/*", index)
        ):
            if source.startswith("/*", index):
                raise LexError("unterminated block comment", pos, filename)
            raise LexError(f"unexpected character {source[index]!r}", pos, filename)

        text = match.group()
        group = match.lastgroup

        if group == "number":
            value, width, sized = resolve_number(text, pos, filename)
            tokens.append(Token(TokenKind.NUMBER, text, pos, value, width, sized))
        elif group == "ident":
            kind = TokenKind.KEYWORD if text in KEYWORDS else TokenKind.IDENTIFIER
            tokens.append(Token(kind, text, pos))
        elif group == "op":
            tokens.append(Token(TokenKind.OPERATOR, text, pos))
        elif group == "punct":
            tokens.append(Token(TokenKind.PUNCTUATION, text, pos))

        newlines = text.count("\n")
        if newlines:
            line += newlines
            column = len(text) - text.rfind("\n")
        else:
            column += len(text)
        byte_offset += len(text.encode("utf-8"))
        index = match.end()

    logger.debug("source_tokenized", file=filename, tokens=len(tokens))
    return tokens
