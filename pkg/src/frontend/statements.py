"""
Statement enumeration: stable, source-ordered statement identifiers.

Every assignment, if and case statement (and every continuous assign) gets a
dense stmt_id in pre-order source order. Branch heads precede their arms.
"""

from collections.abc import Iterator
from dataclasses import dataclass, field
from enum import Enum

from src.frontend.ast_nodes import (
    AlwaysBlock,
    Assignment,
    ContinuousAssign,
    DesignAst,
    IfStatement,
    SourceSpan,
    Statement,
)
from src.frontend.expressions import free_identifiers
from src.utils.logger import get_logger

logger = get_logger(__name__)


class StatementKind(str, Enum):
    ASSIGN = "assign"
    IF = "if"
    CASE = "case"


class StatementContext(str, Enum):
    EDGE = "edge"
    COMB = "comb"
    CONTINUOUS = "continuous"


@dataclass(frozen=True)
class StatementEntry:
    """
    One row of the statement table.

    Attributes:
        stmt_id: Dense id, source order from 0
        kind: assign | if | case
        span: Source span (branch statements span their head only)
        block_id: Index of the enclosing module item
        written: Signal written (assignments only)
        reads: RHS identifiers (assignments) or condition identifiers (branches)
        depth: Number of enclosing branch statements
        parent: stmt_id of the innermost enclosing branch, if any
        context: edge | comb | continuous
        blocking: `=` vs `<=` (procedural assignments only)
    """

    stmt_id: int
    kind: StatementKind
    span: SourceSpan
    block_id: int
    written: str | None
    reads: tuple[str, ...]
    depth: int
    parent: int | None
    context: StatementContext
    blocking: bool | None = None
    node: object = field(default=None, compare=False, repr=False, hash=False)

    @property
    def line(self) -> int:
        return self.span.start.line

    @property
    def is_branch(self) -> bool:
        return self.kind is not StatementKind.ASSIGN


class StatementTable:
    """Source-ordered statement entries with lookups by AST node and line."""

    def __init__(self, entries: list[StatementEntry], filename: str = "<input>") -> None:
        self.entries = entries
        self.filename = filename
        self._by_node = {id(e.node): e.stmt_id for e in entries if e.node is not None}
        self._children: dict[int, list[int]] = {}
        for entry in entries:
            if entry.parent is not None:
                self._children.setdefault(entry.parent, []).append(entry.stmt_id)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[StatementEntry]:
        return iter(self.entries)

    def __getitem__(self, stmt_id: int) -> StatementEntry:
        return self.entries[stmt_id]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StatementTable):
            return NotImplemented
        return self.entries == other.entries

    def id_of(self, node: Statement | ContinuousAssign) -> int:
        """stmt_id of an AST statement node"""
        return self._by_node[id(node)]

    def at_line(self, line: int) -> list[StatementEntry]:
        """Entries whose span starts on a source line"""
        return [e for e in self.entries if e.line == line]

    def children(self, stmt_id: int) -> list[int]:
        return list(self._children.get(stmt_id, []))

    def descendants(self, stmt_id: int) -> list[int]:
        result: list[int] = []
        stack = list(reversed(self.children(stmt_id)))
        while stack:
            current = stack.pop()
            result.append(current)
            stack.extend(reversed(self.children(current)))
        return result

    def ancestors(self, stmt_id: int) -> list[int]:
        """Enclosing branch ids, innermost first"""
        result: list[int] = []
        parent = self.entries[stmt_id].parent
        while parent is not None:
            result.append(parent)
            parent = self.entries[parent].parent
        return result

    def body_writes(self, stmt_id: int) -> list[str]:
        """Signals written by assignments nested inside a branch, sorted"""
        written = {
            self.entries[d].written
            for d in self.descendants(stmt_id)
            if self.entries[d].written is not None
        }
        return sorted(w for w in written if w is not None)


def enumerate_statements(ast: DesignAst) -> StatementTable:
    """
    Assign stmt_ids to every statement of a design.

    Args:
        ast: Parsed design

    Returns:
        StatementTable in source order
    """
    entries: list[StatementEntry] = []

    def visit(
        body: list[Statement],
        block_id: int,
        context: StatementContext,
        depth: int,
        parent: int | None,
    ) -> None:
        for stmt in body:
            stmt_id = len(entries)
            if isinstance(stmt, Assignment):
                entries.append(
                    StatementEntry(
                        stmt_id=stmt_id,
                        kind=StatementKind.ASSIGN,
                        span=stmt.span,
                        block_id=block_id,
                        written=stmt.target.name,
                        reads=tuple(free_identifiers(stmt.expr)),
                        depth=depth,
                        parent=parent,
                        context=context,
                        blocking=stmt.blocking,
                        node=stmt,
                    )
                )
            elif isinstance(stmt, IfStatement):
                entries.append(
                    StatementEntry(
                        stmt_id=stmt_id,
                        kind=StatementKind.IF,
                        span=stmt.span,
                        block_id=block_id,
                        written=None,
                        reads=tuple(free_identifiers(stmt.cond)),
                        depth=depth,
                        parent=parent,
                        context=context,
                        node=stmt,
                    )
                )
                visit(stmt.then_body, block_id, context, depth + 1, stmt_id)
                visit(stmt.else_body, block_id, context, depth + 1, stmt_id)
            else:
                reads: dict[str, None] = dict.fromkeys(free_identifiers(stmt.subject))
                for item in stmt.items:
                    for label in item.labels:
                        reads.update(dict.fromkeys(free_identifiers(label)))
                entries.append(
                    StatementEntry(
                        stmt_id=stmt_id,
                        kind=StatementKind.CASE,
                        span=stmt.span,
                        block_id=block_id,
                        written=None,
                        reads=tuple(reads),
                        depth=depth,
                        parent=parent,
                        context=context,
                        node=stmt,
                    )
                )
                for item in stmt.items:
                    visit(item.body, block_id, context, depth + 1, stmt_id)

    for block_id, item in enumerate(ast.items):
        if isinstance(item, ContinuousAssign):
            entries.append(
                StatementEntry(
                    stmt_id=len(entries),
                    kind=StatementKind.ASSIGN,
                    span=item.span,
                    block_id=block_id,
                    written=item.target.name,
                    reads=tuple(free_identifiers(item.expr)),
                    depth=0,
                    parent=None,
                    context=StatementContext.CONTINUOUS,
                    node=item,
                )
            )
        elif isinstance(item, AlwaysBlock):
            context = (
                StatementContext.EDGE if item.clock is not None else StatementContext.COMB
            )
            visit(item.body, block_id, context, 0, None)

    logger.debug("statements_enumerated", file=ast.filename, count=len(entries))
    return StatementTable(entries, ast.filename)

