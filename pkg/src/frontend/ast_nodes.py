"""
AST node types for the synthesizable Verilog subset.

Nodes compare by identity (eq=False) so they can key statement-id lookups.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Union

from src.errors import SourcePos


@dataclass(frozen=True)
class SourceSpan:
    start: SourcePos
    end: SourcePos

    @property
    def line(self) -> int:
        return self.start.line


# ============================================================================
# Expressions
# ============================================================================


@dataclass(eq=False)
class Identifier:
    name: str
    pos: SourcePos


@dataclass(eq=False)
class Number:
    value: int
    width: int
    sized: bool
    pos: SourcePos


@dataclass(eq=False)
class UnaryOp:
    op: str
    operand: "Expr"
    pos: SourcePos


@dataclass(eq=False)
class BinaryOp:
    op: str
    left: "Expr"
    right: "Expr"
    pos: SourcePos


@dataclass(eq=False)
class Ternary:
    cond: "Expr"
    if_true: "Expr"
    if_false: "Expr"
    pos: SourcePos


@dataclass(eq=False)
class Concat:
    parts: list["Expr"]
    pos: SourcePos


@dataclass(eq=False)
class BitSelect:
    name: str
    index: "Expr"
    pos: SourcePos


@dataclass(eq=False)
class PartSelect:
    name: str
    msb: int
    lsb: int
    pos: SourcePos


Expr = Union[Identifier, Number, UnaryOp, BinaryOp, Ternary, Concat, BitSelect, PartSelect]


# ============================================================================
# Statements
# ============================================================================


@dataclass(eq=False)
class LValue:
    """Assignment target: a whole signal or a constant bit/part select."""

    name: str
    pos: SourcePos
    msb: int | None = None
    lsb: int | None = None

    @property
    def is_select(self) -> bool:
        return self.msb is not None


@dataclass(eq=False)
class Assignment:
    target: LValue
    expr: Expr
    blocking: bool
    span: SourceSpan


@dataclass(eq=False)
class IfStatement:
    cond: Expr
    then_body: list["Statement"]
    else_body: list["Statement"]
    span: SourceSpan


@dataclass(eq=False)
class CaseItem:
    # Empty labels mark the default arm
    labels: list[Expr]
    body: list["Statement"]
    pos: SourcePos

    @property
    def is_default(self) -> bool:
        return not self.labels


@dataclass(eq=False)
class CaseStatement:
    subject: Expr
    items: list[CaseItem]
    span: SourceSpan

    @property
    def default(self) -> CaseItem | None:
        return next((item for item in self.items if item.is_default), None)


Statement = Union[Assignment, IfStatement, CaseStatement]


# ============================================================================
# Module items
# ============================================================================


class BlockKind(str, Enum):
    EDGE = "edge"
    COMB = "comb"


@dataclass(eq=False)
class ContinuousAssign:
    target: LValue
    expr: Expr
    span: SourceSpan


@dataclass(eq=False)
class AlwaysBlock:
    kind: BlockKind
    body: list[Statement]
    span: SourceSpan
    edge: str | None = None
    clock: str | None = None


ModuleItem = Union[ContinuousAssign, AlwaysBlock]


@dataclass(eq=False)
class SignalDecl:
    name: str
    pos: SourcePos
    direction: str | None = None  # "input" | "output" | None
    is_reg: bool = False
    msb: int = 0
    lsb: int = 0

    @property
    def width(self) -> int:
        return self.msb - self.lsb + 1

    @property
    def is_port(self) -> bool:
        return self.direction is not None


@dataclass(eq=False)
class Parameter:
    name: str
    value: int
    width: int
    local: bool
    pos: SourcePos


@dataclass(eq=False)
class DesignAst:
    module_name: str
    filename: str
    pos: SourcePos
    ports: list[str] = field(default_factory=list)
    signals: dict[str, SignalDecl] = field(default_factory=dict)
    parameters: dict[str, Parameter] = field(default_factory=dict)
    items: list[ModuleItem] = field(default_factory=list)

    @property
    def continuous_assigns(self) -> list[ContinuousAssign]:
        return [item for item in self.items if isinstance(item, ContinuousAssign)]

    @property
    def always_blocks(self) -> list[AlwaysBlock]:
        return [item for item in self.items if isinstance(item, AlwaysBlock)]

    @property
    def edge_blocks(self) -> list[AlwaysBlock]:
        return [b for b in self.always_blocks if b.kind is BlockKind.EDGE]

    @property
    def comb_blocks(self) -> list[AlwaysBlock]:
        return [b for b in self.always_blocks if b.kind is BlockKind.COMB]

    @property
    def inputs(self) -> list[str]:
        return [n for n in self.ports if self.signals[n].direction == "input"]

    @property
    def outputs(self) -> list[str]:
        return [n for n in self.ports if self.signals[n].direction == "output"]

    @property
    def clock(self) -> str | None:
        clocks = {b.clock for b in self.edge_blocks}
        return next(iter(clocks)) if clocks else None

    def width_of(self, name: str) -> int:
        return self.signals[name].width

    @property
    def widths(self) -> dict[str, int]:
        return {name: decl.width for name, decl in self.signals.items()}


def walk_statements(body: list[Statement]):
    """Yield every statement in a body in source (pre-)order."""
    for stmt in body:
        yield stmt
        if isinstance(stmt, IfStatement):
            yield from walk_statements(stmt.then_body)
            yield from walk_statements(stmt.else_body)
        elif isinstance(stmt, CaseStatement):
            for item in stmt.items:
                yield from walk_statements(item.body)
