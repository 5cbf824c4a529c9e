"""
Recursive-descent parser for the synthesizable Verilog subset.

Supported constructs:
  - One module per file, ANSI or non-ANSI port lists, `#(parameter ...)`
  - input / output / wire / reg declarations with constant ranges `[N:0]`
  - parameter / localparam (folded to integer constants at parse time)
  - assign (continuous assignment), `wire w = expr;` net assignments
  - always @(posedge clk), always @(negedge clk), always @(*) / @*
  - begin/end (optionally named), if/else, case/default
  - blocking (=) and nonblocking (<=) assignments
  - Expressions: & | ^ ~ + - * << >> == != < <= > >= && || ! ?:,
    reduction & | ^, concatenation, bit-select and constant part-select

Anything else that is still valid Verilog raises UnsupportedConstruct.
"""

from collections.abc import Callable

from config.analysis_rules import UNSUPPORTED_KEYWORDS, HdlLimits
from src.errors import HdlSemanticError, ParseError, SourcePos, UnsupportedConstruct
from src.frontend.ast_nodes import (
    AlwaysBlock,
    Assignment,
    BinaryOp,
    BitSelect,
    BlockKind,
    CaseItem,
    CaseStatement,
    Concat,
    ContinuousAssign,
    DesignAst,
    Expr,
    Identifier,
    IfStatement,
    LValue,
    ModuleItem,
    Number,
    Parameter,
    PartSelect,
    SignalDecl,
    SourceSpan,
    Statement,
    Ternary,
    UnaryOp,
    walk_statements,
)
from src.frontend.expressions import const_value, identifier_nodes, is_constant, mask, self_width
from src.frontend.tokens import Token, TokenKind
from src.utils.logger import get_logger

logger = get_logger(__name__)

_UNARY_OPS = ("~", "!", "-", "+", "&", "|", "^")
_ITEM_STARTS = frozenset(
    {"input", "output", "wire", "reg", "parameter", "localparam", "assign", "always", "endmodule"}
)
_STATEMENT_STARTS = frozenset({"begin", "if", "case", "identifier", ";"})
_PRIMARY_STARTS = frozenset({"identifier", "number", "(", "{"})


def _end_of(tok: Token) -> SourcePos:
    return SourcePos(
        tok.pos.line,
        tok.end_column,
        tok.pos.offset + len(tok.lexeme.encode("utf-8")),
    )


class Parser:
    """Recursive-descent parser producing a DesignAst."""

    def __init__(self, tokens: list[Token], filename: str = "<input>") -> None:
        self.tokens = tokens
        self.filename = filename
        self.pos = 0

        self._ports: list[str] = []
        self._ansi = False
        self._signals: dict[str, SignalDecl] = {}
        self._parameters: dict[str, Parameter] = {}
        self._items: list[ModuleItem] = []

    # ---- Token navigation ----

    def _cur(self) -> Token | None:
        if self.pos < len(self.tokens):
            return self.tokens[self.pos]
        return None

    def _peek(self, offset: int = 1) -> Token | None:
        p = self.pos + offset
        if p < len(self.tokens):
            return self.tokens[p]
        return None

    def _here(self) -> SourcePos:
        tok = self._cur()
        if tok is not None:
            return tok.pos
        if self.tokens:
            return _end_of(self.tokens[-1])
        return SourcePos(1, 1, 0)

    def _at(self, *lexemes: str) -> bool:
        tok = self._cur()
        return (
            tok is not None
            and tok.kind not in (TokenKind.IDENTIFIER, TokenKind.NUMBER)
            and tok.lexeme in lexemes
        )

    def _at_kind(self, kind: TokenKind) -> bool:
        tok = self._cur()
        return tok is not None and tok.kind is kind

    def _advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def _unexpected(self, expected: frozenset[str]) -> None:
        tok = self._cur()
        if tok is None:
            raise ParseError("unexpected end of input", self._here(), self.filename, expected)
        if tok.kind is TokenKind.KEYWORD and tok.lexeme in UNSUPPORTED_KEYWORDS:
            raise UnsupportedConstruct(
                f"'{tok.lexeme}' is not supported", tok.pos, self.filename
            )
        raise ParseError(f"unexpected {tok.lexeme!r}", tok.pos, self.filename, expected)

    def _eat(self, lexeme: str) -> Token:
        if not self._at(lexeme):
            self._unexpected(frozenset({lexeme}))
        return self._advance()

    def _eat_if(self, lexeme: str) -> Token | None:
        if self._at(lexeme):
            return self._advance()
        return None

    def _eat_ident(self) -> Token:
        if not self._at_kind(TokenKind.IDENTIFIER):
            self._unexpected(frozenset({"identifier"}))
        return self._advance()

    def _unsupported(self, message: str, pos: SourcePos | None = None) -> UnsupportedConstruct:
        return UnsupportedConstruct(message, pos or self._here(), self.filename)

    def _semantic(self, message: str, pos: SourcePos | None = None) -> HdlSemanticError:
        return HdlSemanticError(message, pos or self._here(), self.filename)

    # ---- Top-level ----

    def parse(self) -> DesignAst:
        module_tok = self._eat("module")
        name = self._eat_ident().lexeme

        if self._eat_if("#"):
            self._parse_parameter_port_list()

        if self._eat_if("("):
            if not self._at(")"):
                self._parse_port_list()
            self._eat(")")
        self._eat(";")

        while not self._at("endmodule"):
            if self._cur() is None:
                self._unexpected(frozenset({"endmodule"}))
            self._parse_module_item()
        self._eat("endmodule")

        if self._cur() is not None:
            if self._at("module"):
                raise self._unsupported("multiple modules per file are not supported")
            self._unexpected(frozenset({"end of input"}))

        ast = DesignAst(
            module_name=name,
            filename=self.filename,
            pos=module_tok.pos,
            ports=self._ports,
            signals=self._signals,
            parameters=self._parameters,
            items=self._items,
        )
        self._check_design(ast)

        logger.info(
            "design_parsed",
            file=self.filename,
            module=name,
            ports=len(ast.ports),
            signals=len(ast.signals),
            items=len(ast.items),
        )
        return ast

    # ---- Ports and declarations ----

    def _parse_parameter_port_list(self) -> None:
        self._eat("(")
        while self._at("parameter", "localparam"):
            self._parse_parameter_decl()
            if not self._eat_if(","):
                break
        self._eat(")")

    def _parse_port_list(self) -> None:
        if not self._at("input", "output"):
            if self._at("inout"):
                self._unexpected(frozenset())
            self._ports.append(self._eat_ident().lexeme)
            while self._eat_if(","):
                self._ports.append(self._eat_ident().lexeme)
            return

        self._ansi = True
        direction = ""
        is_reg = False
        msb, lsb = 0, 0
        while True:
            if self._at("input", "output"):
                direction = self._advance().lexeme
                is_reg = False
                msb, lsb = 0, 0
                if self._eat_if("reg"):
                    is_reg = True
                else:
                    self._eat_if("wire")
                if self._at("["):
                    msb, lsb = self._parse_range()
            elif not direction or self._at("inout"):
                self._unexpected(frozenset({"input", "output"}))

            name_tok = self._eat_ident()
            if direction == "input" and is_reg:
                raise self._semantic("input ports cannot be declared reg", name_tok.pos)
            self._declare(
                SignalDecl(name_tok.lexeme, name_tok.pos, direction, is_reg, msb, lsb)
            )
            self._ports.append(name_tok.lexeme)

            if not self._eat_if(","):
                break

    def _parse_range(self) -> tuple[int, int]:
        start = self._eat("[").pos
        msb = self._parse_constant("range bound")
        self._eat(":")
        lsb = self._parse_constant("range bound")
        self._eat("]")

        if msb < lsb:
            raise self._semantic(f"reversed range [{msb}:{lsb}]", start)
        if lsb != 0:
            raise self._unsupported("ranges must end at bit 0", start)
        width = msb - lsb + 1
        if not HdlLimits.width_ok(width):
            raise self._semantic(
                f"width {width} outside {HdlLimits.MIN_WIDTH}..{HdlLimits.MAX_WIDTH}", start
            )
        return msb, lsb

    def _parse_constant(self, what: str) -> int:
        pos = self._here()
        expr = self._parse_expression()
        if not is_constant(expr):
            raise self._semantic(f"{what} must be constant", pos)
        return const_value(expr)

    def _declare(self, decl: SignalDecl) -> None:
        if decl.name in self._signals or decl.name in self._parameters:
            raise self._semantic(f"duplicate declaration of '{decl.name}'", decl.pos)
        self._signals[decl.name] = decl

    def _merge_declaration(
        self,
        name_tok: Token,
        direction: str | None,
        is_reg: bool,
        msb: int,
        lsb: int,
    ) -> None:
        """Declare a signal, merging non-ANSI `output y; reg y;` pairs."""
        name = name_tok.lexeme
        existing = self._signals.get(name)

        if direction is not None and (self._ansi or name not in self._ports):
            raise self._semantic(f"'{name}' is not in the port list", name_tok.pos)

        if existing is None:
            self._declare(SignalDecl(name, name_tok.pos, direction, is_reg, msb, lsb))
            return

        mergeable = (
            not self._ansi
            and (existing.direction is None) != (direction is None)
            and (existing.msb, existing.lsb) == (msb, lsb)
        )
        if not mergeable:
            raise self._semantic(f"duplicate declaration of '{name}'", name_tok.pos)
        if direction is not None:
            existing.direction = direction
        existing.is_reg = existing.is_reg or is_reg
        if existing.direction == "input" and existing.is_reg:
            raise self._semantic("input ports cannot be declared reg", name_tok.pos)

    def _parse_direction_decl(self) -> None:
        if self._ansi:
            raise self._semantic("port declarations are already given in the module header")
        direction = self._advance().lexeme
        is_reg = bool(self._eat_if("reg"))
        if not is_reg:
            self._eat_if("wire")
        msb, lsb = self._parse_range() if self._at("[") else (0, 0)
        while True:
            self._merge_declaration(self._eat_ident(), direction, is_reg, msb, lsb)
            if not self._eat_if(","):
                break
        self._eat(";")

    def _parse_net_decl(self) -> None:
        is_reg = self._advance().lexeme == "reg"
        msb, lsb = self._parse_range() if self._at("[") else (0, 0)
        while True:
            name_tok = self._eat_ident()
            self._merge_declaration(name_tok, None, is_reg, msb, lsb)
            if self._at("["):
                raise self._unsupported("memories are not supported")
            if self._at("="):
                if is_reg:
                    raise self._unsupported("variable initializers are not supported")
                self._advance()
                expr = self._parse_expression()
                end = self._cur()
                self._items.append(
                    ContinuousAssign(
                        LValue(name_tok.lexeme, name_tok.pos),
                        expr,
                        SourceSpan(name_tok.pos, _end_of(end) if end else self._here()),
                    )
                )
            if not self._eat_if(","):
                break
        self._eat(";")

    def _parse_parameter_decl(self) -> None:
        local = self._advance().lexeme == "localparam"
        width = self._parse_range()[0] + 1 if self._at("[") else None
        while True:
            name_tok = self._eat_ident()
            self._eat("=")
            pos = self._here()
            expr = self._parse_expression()
            if not is_constant(expr):
                raise self._semantic("parameter value must be constant", pos)

            param_width = width if width is not None else self_width(expr, {})
            value = const_value(expr) & mask(param_width)
            if name_tok.lexeme in self._signals or name_tok.lexeme in self._parameters:
                raise self._semantic(
                    f"duplicate declaration of '{name_tok.lexeme}'", name_tok.pos
                )
            self._parameters[name_tok.lexeme] = Parameter(
                name_tok.lexeme, value, param_width, local, name_tok.pos
            )

            # In a `#(...)` list a following `, parameter` starts a new declaration
            nxt = self._peek()
            if not self._at(",") or (nxt is not None and nxt.lexeme in ("parameter", "localparam")):
                break
            self._advance()

    # ---- Module items ----

    def _parse_module_item(self) -> None:
        tok = self._cur()
        assert tok is not None

        if self._at("input", "output"):
            self._parse_direction_decl()
        elif self._at("wire", "reg"):
            self._parse_net_decl()
        elif self._at("parameter", "localparam"):
            self._parse_parameter_decl()
            self._eat(";")
        elif self._at("assign"):
            self._parse_continuous_assign()
        elif self._at("always"):
            self._items.append(self._parse_always())
        elif tok.kind is TokenKind.IDENTIFIER:
            raise self._unsupported("module instantiation is not supported")
        else:
            self._unexpected(_ITEM_STARTS)

    def _parse_continuous_assign(self) -> None:
        start = self._advance().pos
        if self._at("#"):
            raise self._unsupported("delays are not supported")
        while True:
            target = self._parse_lvalue()
            self._eat("=")
            expr = self._parse_expression()
            end_tok = self._cur()
            end = _end_of(end_tok) if end_tok is not None else self._here()
            self._items.append(ContinuousAssign(target, expr, SourceSpan(start, end)))
            if not self._eat_if(","):
                break
            start = self._here()
        self._eat(";")

    def _parse_always(self) -> AlwaysBlock:
        start = self._advance().pos
        if self._at("#"):
            raise self._unsupported("delays are not supported")
        self._eat("@")

        kind, edge, clock = BlockKind.COMB, None, None
        if self._eat_if("*"):
            pass
        else:
            self._eat("(")
            if self._eat_if("*"):
                self._eat(")")
            else:
                kind, edge, clock = self._parse_sensitivity_list(start)

        body = self._parse_statement_or_block()
        end = _end_of(self.tokens[self.pos - 1])
        return AlwaysBlock(kind, body, SourceSpan(start, end), edge, clock)

    def _parse_sensitivity_list(
        self, start: SourcePos
    ) -> tuple[BlockKind, str | None, str | None]:
        entries: list[tuple[str | None, Token]] = []
        while True:
            edge = self._advance().lexeme if self._at("posedge", "negedge") else None
            entries.append((edge, self._eat_ident()))
            if not (self._eat_if("or") or self._eat_if(",")):
                break
        self._eat(")")

        edged = [(edge, tok) for edge, tok in entries if edge is not None]
        if edged and len(edged) != len(entries):
            raise self._unsupported("mixed edge and level sensitivity is not supported", start)

        if not edged:
            logger.warning(
                "explicit_sensitivity_list",
                file=self.filename,
                line=start.line,
                detail="treated as @(*)",
            )
            return BlockKind.COMB, None, None

        edge, clock_tok = edged[0]
        if len(edged) > 1:
            logger.warning(
                "extra_edges_modeled_synchronously",
                file=self.filename,
                line=start.line,
                clock=clock_tok.lexeme,
                ignored=[tok.lexeme for _, tok in edged[1:]],
            )
        return BlockKind.EDGE, edge, clock_tok.lexeme

    # ---- Statements ----

    def _parse_statement_or_block(self) -> list[Statement]:
        if self._at("begin"):
            return self._parse_begin_end()
        stmt = self._parse_statement()
        return [stmt] if stmt is not None else []

    def _parse_begin_end(self) -> list[Statement]:
        self._eat("begin")
        if self._eat_if(":"):
            self._eat_ident()
        body: list[Statement] = []
        while not self._at("end"):
            if self._cur() is None:
                self._unexpected(frozenset({"end"}))
            body.extend(self._parse_statement_or_block())
        self._eat("end")
        return body

    def _parse_statement(self) -> Statement | None:
        tok = self._cur()
        if self._at("if"):
            return self._parse_if()
        if self._at("case"):
            return self._parse_case()
        if self._eat_if(";"):
            return None
        if self._at("#"):
            raise self._unsupported("delays are not supported")
        if self._at("{"):
            raise self._unsupported("concatenated assignment targets are not supported")
        if tok is not None and tok.kind is TokenKind.IDENTIFIER:
            return self._parse_assignment()
        self._unexpected(_STATEMENT_STARTS)
        return None

    def _parse_if(self) -> IfStatement:
        start = self._advance().pos
        self._eat("(")
        cond = self._parse_expression()
        close = self._eat(")")
        span = SourceSpan(start, _end_of(close))

        then_body = self._parse_statement_or_block()
        else_body = self._parse_statement_or_block() if self._eat_if("else") else []
        return IfStatement(cond, then_body, else_body, span)

    def _parse_case(self) -> CaseStatement:
        start = self._advance().pos
        self._eat("(")
        subject = self._parse_expression()
        close = self._eat(")")
        span = SourceSpan(start, _end_of(close))

        items: list[CaseItem] = []
        while not self._at("endcase"):
            if self._cur() is None:
                self._unexpected(frozenset({"endcase"}))
            item_pos = self._here()
            if self._eat_if("default"):
                if any(item.is_default for item in items):
                    raise self._semantic("duplicate default arm", item_pos)
                self._eat_if(":")
                labels: list[Expr] = []
            else:
                labels = [self._parse_expression()]
                while self._eat_if(","):
                    labels.append(self._parse_expression())
                self._eat(":")
            items.append(CaseItem(labels, self._parse_statement_or_block(), item_pos))
        self._eat("endcase")
        return CaseStatement(subject, items, span)

    def _parse_assignment(self) -> Assignment:
        target = self._parse_lvalue()
        if self._at("="):
            blocking = True
        elif self._at("<="):
            blocking = False
        else:
            self._unexpected(frozenset({"=", "<="}))
        self._advance()
        if self._at("#"):
            raise self._unsupported("delays are not supported")
        expr = self._parse_expression()
        semi = self._eat(";")
        return Assignment(target, expr, blocking, SourceSpan(target.pos, _end_of(semi)))

    def _parse_lvalue(self) -> LValue:
        name_tok = self._eat_ident()
        if name_tok.lexeme in self._parameters:
            raise self._semantic(f"cannot assign to parameter '{name_tok.lexeme}'", name_tok.pos)
        if not self._eat_if("["):
            return LValue(name_tok.lexeme, name_tok.pos)

        first = self._parse_expression()
        if not is_constant(first):
            raise self._unsupported(
                "variable-indexed assignment targets are not supported", name_tok.pos
            )
        msb = lsb = const_value(first)
        if self._eat_if(":"):
            lsb = self._parse_constant("part-select bound")
        self._eat("]")
        if msb < lsb:
            raise self._semantic(f"reversed part-select [{msb}:{lsb}]", name_tok.pos)
        return LValue(name_tok.lexeme, name_tok.pos, msb, lsb)

    # ---- Expressions (lowest to highest precedence) ----

    def _parse_expression(self) -> Expr:
        return self._parse_ternary()

    def _parse_ternary(self) -> Expr:
        cond = self._parse_lor()
        if self._at("?"):
            pos = self._advance().pos
            if_true = self._parse_ternary()
            self._eat(":")
            if_false = self._parse_ternary()
            return Ternary(cond, if_true, if_false, pos)
        return cond

    def _parse_binary(self, ops: tuple[str, ...], operand: Callable[[], Expr]) -> Expr:
        left = operand()
        while self._at(*ops):
            op_tok = self._advance()
            left = BinaryOp(op_tok.lexeme, left, operand(), op_tok.pos)
        return left

    def _parse_lor(self) -> Expr:
        return self._parse_binary(("||",), self._parse_land)

    def _parse_land(self) -> Expr:
        return self._parse_binary(("&&",), self._parse_bitor)

    def _parse_bitor(self) -> Expr:
        return self._parse_binary(("|",), self._parse_bitxor)

    def _parse_bitxor(self) -> Expr:
        return self._parse_binary(("^",), self._parse_bitand)

    def _parse_bitand(self) -> Expr:
        return self._parse_binary(("&",), self._parse_equality)

    def _parse_equality(self) -> Expr:
        return self._parse_binary(("==", "!=", "===", "!=="), self._parse_comparison)

    def _parse_comparison(self) -> Expr:
        return self._parse_binary(("<", "<=", ">", ">="), self._parse_shift)

    def _parse_shift(self) -> Expr:
        left = self._parse_binary(("<<", ">>"), self._parse_additive)
        if self._at("<<<", ">>>"):
            raise self._unsupported("arithmetic shifts are not supported")
        return left

    def _parse_additive(self) -> Expr:
        return self._parse_binary(("+", "-"), self._parse_multiplicative)

    def _parse_multiplicative(self) -> Expr:
        left = self._parse_binary(("*",), self._parse_unary)
        if self._at("/", "%"):
            raise self._unsupported("division and modulo are not supported")
        return left

    def _parse_unary(self) -> Expr:
        if self._at(*_UNARY_OPS):
            op_tok = self._advance()
            return UnaryOp(op_tok.lexeme, self._parse_unary(), op_tok.pos)
        return self._parse_primary()

    def _parse_primary(self) -> Expr:
        tok = self._cur()

        if tok is not None and tok.kind is TokenKind.NUMBER:
            self._advance()
            assert tok.value is not None and tok.width is not None
            return Number(tok.value, tok.width, tok.sized, tok.pos)

        if tok is not None and tok.kind is TokenKind.IDENTIFIER:
            self._advance()
            return self._parse_reference(tok)

        if self._eat_if("("):
            expr = self._parse_expression()
            self._eat(")")
            return expr

        if self._at("{"):
            return self._parse_concat_or_repeat()

        self._unexpected(_PRIMARY_STARTS)
        raise AssertionError("unreachable")

    def _parse_reference(self, tok: Token) -> Expr:
        name = tok.lexeme
        param = self._parameters.get(name)
        if param is not None:
            if self._at("["):
                raise self._unsupported("selects on parameters are not supported")
            return Number(param.value, param.width, True, tok.pos)

        if self._at("("):
            raise self._unsupported("function calls are not supported", tok.pos)

        if not self._eat_if("["):
            return Identifier(name, tok.pos)

        index = self._parse_expression()
        if self._eat_if(":"):
            lsb_pos = self._here()
            lsb_expr = self._parse_expression()
            self._eat("]")
            if not (is_constant(index) and is_constant(lsb_expr)):
                raise self._unsupported("variable part-selects are not supported", lsb_pos)
            msb, lsb = const_value(index), const_value(lsb_expr)
            if msb < lsb:
                raise self._semantic(f"reversed part-select [{msb}:{lsb}]", tok.pos)
            return PartSelect(name, msb, lsb, tok.pos)
        self._eat("]")
        return BitSelect(name, index, tok.pos)

    def _parse_concat_or_repeat(self) -> Expr:
        pos = self._eat("{").pos
        first = self._parse_expression()
        if self._at("{"):
            raise self._unsupported("replication is not supported", pos)
        parts = [first]
        while self._eat_if(","):
            parts.append(self._parse_expression())
        self._eat("}")
        for part in parts:
            if isinstance(part, Number) and not part.sized:
                raise self._semantic("unsized literal in concatenation", part.pos)
        return Concat(parts, pos)

    # ---- Semantic checks ----

    def _check_design(self, ast: DesignAst) -> None:
        for name in ast.ports:
            decl = ast.signals.get(name)
            if decl is None or decl.direction is None:
                pos = decl.pos if decl else ast.pos
                raise self._semantic(f"port '{name}' has no direction declaration", pos)

        for item in ast.items:
            if isinstance(item, ContinuousAssign):
                decl = self._check_target(item.target)
                if decl.is_reg:
                    raise self._semantic(
                        f"continuous assignment to reg '{decl.name}'", item.target.pos
                    )
                self._check_expr(item.expr)
                continue

            if item.clock is not None:
                decl = ast.signals.get(item.clock)
                if decl is None or decl.direction != "input":
                    raise self._semantic(
                        f"clock '{item.clock}' must be an input port", item.span.start
                    )
            for stmt in walk_statements(item.body):
                if isinstance(stmt, Assignment):
                    decl = self._check_target(stmt.target)
                    if not decl.is_reg:
                        raise self._semantic(
                            f"procedural assignment to wire '{decl.name}'", stmt.target.pos
                        )
                    self._check_expr(stmt.expr)
                elif isinstance(stmt, IfStatement):
                    self._check_expr(stmt.cond)
                else:
                    self._check_expr(stmt.subject)
                    for case_item in stmt.items:
                        for label in case_item.labels:
                            self._check_expr(label)

        edge_blocks = ast.edge_blocks
        clocks = sorted({b.clock for b in edge_blocks if b.clock})
        if len(clocks) > 1:
            raise self._semantic(
                f"multiple clocks are not supported: {', '.join(clocks)}",
                edge_blocks[-1].span.start,
            )
        if len({b.edge for b in edge_blocks}) > 1:
            raise self._semantic("mixed clock edges are not supported", edge_blocks[-1].span.start)

    def _check_target(self, target: LValue) -> SignalDecl:
        decl = self._signals.get(target.name)
        if decl is None:
            raise self._semantic(f"undeclared identifier '{target.name}'", target.pos)
        if target.msb is not None and target.msb >= decl.width:
            raise self._semantic(f"select on '{target.name}' out of range", target.pos)
        return decl

    def _check_expr(self, expr: Expr) -> None:
        for node in identifier_nodes(expr):
            decl = self._signals.get(node.name)
            if decl is None:
                raise self._semantic(f"undeclared identifier '{node.name}'", node.pos)
            if isinstance(node, PartSelect) and node.msb >= decl.width:
                raise self._semantic(f"part-select on '{node.name}' out of range", node.pos)
            if (
                isinstance(node, BitSelect)
                and isinstance(node.index, Number)
                and node.index.value >= decl.width
            ):
                raise self._semantic(f"bit-select on '{node.name}' out of range", node.pos)


def parse_design(tokens: list[Token], filename: str = "<input>") -> DesignAst:
    """
    Parse a token stream into a DesignAst.

    Args:
        tokens: Output of tokenize()
        filename: Name used in error messages

    Returns:
        Checked DesignAst

    Raises:
        ParseError: Token stream does not match the grammar
        UnsupportedConstruct: Valid Verilog outside the subset
        HdlSemanticError: Undeclared identifiers, bad widths, clocking errors
    """
    return Parser(tokens, filename).parse()
