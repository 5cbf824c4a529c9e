"""
Mutation seeding and ground truth for the corpus.

Mutants are single-token edits on statement lines of a reference design.
A mutant is kept when the stimulus detects it (some cycle fails against the
reference outputs). Its true activation cycle is the first cycle whose
end-of-cycle value of a signal written by the mutated statement differs from
the reference.
"""

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from config.analysis_rules import MUTATION_OPERATORS
from src.bench.manifest import CorpusManifest, Mutation
from src.design import Design, parse_source
from src.errors import PeckerError
from src.frontend.lexer import tokenize
from src.frontend.statements import StatementKind
from src.frontend.tokens import Token, TokenKind
from src.simulation.simulator import complete_golden_outputs, simulate
from src.simulation.stimulus import Stimulus
from src.utils.logger import get_logger

logger = get_logger(__name__)

OPERATOR_SWAPS: dict[str, str] = {
    "+": "-",
    "-": "+",
    "&": "|",
    "|": "&",
    "^": "&",
    "==": "!=",
    "!=": "==",
    "&&": "||",
    "||": "&&",
    ">": ">=",
    ">=": ">",
}

SHIFT_SWAPS: dict[str, str] = {"<<": ">>", ">>": "<<"}


@dataclass(frozen=True)
class SeededMutant:
    operator: str
    mutation: Mutation
    first_fail_cycle: int
    true_activation_cycle: int | None

    @property
    def line(self) -> int:
        return self.mutation.line

    def to_entry(self, bug_id: str, category: str, design: str, stimulus: str) -> dict[str, Any]:
        """Manifest entry for this mutant (paths as given)"""
        entry: dict[str, Any] = {
            "id": bug_id,
            "category": category,
            "design": design,
            "stimulus": stimulus,
            "mutation": self.mutation.to_dict(),
            "ground_truth_line": self.line,
            "operator": self.operator,
        }
        if self.true_activation_cycle is not None:
            entry["true_activation_cycle"] = self.true_activation_cycle
        return entry


# ============================================================================
# Ground truth
# ============================================================================


def written_signals(design: Design, line: int) -> set[str]:
    """Signals written by the statements starting on a line (branch bodies included)"""
    written: set[str] = set()
    for entry in design.statements.at_line(line):
        if entry.kind is StatementKind.ASSIGN:
            assert entry.written is not None
            written.add(entry.written)
        else:
            written.update(design.statements.body_writes(entry.stmt_id))
    return written


def true_activation_cycle(
    reference: Design,
    buggy: Design,
    test: Stimulus,
    line: int,
) -> int | None:
    """
    First cycle where the buggy design diverges from the reference in a
    signal written by the statement(s) on `line`.

    Args:
        reference: Bug-free design
        buggy: Design carrying the bug on `line`
        test: Stimulus applied to both
        line: Ground-truth source line in the buggy design

    Returns:
        Cycle index, or None if the signals never diverge
    """
    signals = written_signals(buggy, line)
    ref_run = simulate(reference, test)
    bug_run = simulate(buggy, test)
    for ref, bug in zip(ref_run.records, bug_run.records, strict=True):
        if any(ref.snapshot.get(s) != bug.snapshot.get(s) for s in signals):
            return ref.cycle
    return None


def with_golden(tests: Sequence[Stimulus], reference: Design) -> list[Stimulus]:
    return [t if t.has_golden else complete_golden_outputs(t, reference) for t in tests]


# ============================================================================
# Mutant enumeration
# ============================================================================


def _statement_lines(design: Design) -> dict[int, bool]:
    """Source line -> whether an assignment starts there"""
    lines: dict[int, bool] = {}
    for entry in design.statements:
        lines[entry.line] = lines.get(entry.line, False) or entry.kind is StatementKind.ASSIGN
    return lines


def _mutable_tokens(design: Design) -> list[Token]:
    """
    Tokens on statement lines that belong to an expression.

    On lines holding an assignment only the right-hand side counts, which
    keeps case labels and targets intact.
    """
    lines = _statement_lines(design)
    by_line: dict[int, list[Token]] = {}
    for token in tokenize(design.source, design.filename):
        if token.pos.line in lines:
            by_line.setdefault(token.pos.line, []).append(token)

    selected: list[Token] = []
    for line, tokens in sorted(by_line.items()):
        if lines[line]:
            assign_at = next(
                (i for i, t in enumerate(tokens) if t.is_(TokenKind.OPERATOR) and t.lexeme in ("=", "<=")),
                None,
            )
            if assign_at is None:
                continue
            tokens = tokens[assign_at + 1 :]
        selected.extend(tokens)
    return selected


def _next_parameter(design: Design, name: str) -> str | None:
    params = list(design.ast.parameters.values())
    index = next(i for i, p in enumerate(params) if p.name == name)
    current = params[index]
    for offset in range(1, len(params)):
        other = params[(index + offset) % len(params)]
        if other.width == current.width and other.value != current.value:
            return other.name
    return None


def enumerate_mutants(
    design: Design,
    operators: Iterable[str] = MUTATION_OPERATORS,
) -> list[tuple[str, Mutation]]:
    """
    List single-token mutations of a design, in source order.

    Args:
        design: Reference design
        operators: Mutation operators to apply

    Returns:
        (operator, Mutation) pairs
    """
    wanted = set(operators)
    unknown = wanted - set(MUTATION_OPERATORS)
    if unknown:
        raise ValueError(f"unknown mutation operators: {sorted(unknown)}")

    parameters = set(design.ast.parameters)
    mutants: list[tuple[str, Mutation]] = []

    for token in _mutable_tokens(design):
        line, column = token.pos.line, token.pos.column
        if token.kind is TokenKind.OPERATOR:
            if "wrong_operator" in wanted and token.lexeme in OPERATOR_SWAPS:
                replacement = OPERATOR_SWAPS[token.lexeme]
                mutants.append(("wrong_operator", Mutation(line, token.lexeme, replacement, column)))
            if "wrong_shift_direction" in wanted and token.lexeme in SHIFT_SWAPS:
                replacement = SHIFT_SWAPS[token.lexeme]
                mutants.append(
                    ("wrong_shift_direction", Mutation(line, token.lexeme, replacement, column))
                )
        elif token.kind is TokenKind.NUMBER and "wrong_constant" in wanted:
            assert token.value is not None
            if token.sized:
                assert token.width is not None
                replacement = f"{token.width}'d{(token.value + 1) % (1 << token.width)}"
            else:
                replacement = str(token.value + 1)
            mutants.append(("wrong_constant", Mutation(line, token.lexeme, replacement, column)))
        elif (
            token.kind is TokenKind.IDENTIFIER
            and token.lexeme in parameters
            and "wrong_branch_target" in wanted
        ):
            other = _next_parameter(design, token.lexeme)
            if other is not None:
                mutants.append(("wrong_branch_target", Mutation(line, token.lexeme, other, column)))

    return mutants


def seed_mutants(
    reference: Design,
    tests: Sequence[Stimulus],
    operators: Iterable[str] = MUTATION_OPERATORS,
    limit: int | None = None,
) -> list[SeededMutant]:
    """
    Keep the mutants a stimulus detects.

    Args:
        reference: Reference design
        tests: Stimulus tests (golden outputs derived from the reference if absent)
        operators: Mutation operators to apply
        limit: Stop after this many detected mutants

    Returns:
        Detected mutants with first-fail and true activation cycles
    """
    golden = with_golden(tests, reference)
    kept: list[SeededMutant] = []

    for operator, mutation in enumerate_mutants(reference, operators):
        try:
            buggy = parse_source(mutation.apply(reference.source), reference.filename)
            runs = [simulate(buggy, test) for test in golden]
        except PeckerError as e:
            logger.debug("mutant_skipped", line=mutation.line, reason=str(e))
            continue

        failing = next(((t, r) for t, r in zip(golden, runs) if r.failed), None)
        if failing is None:
            continue
        test, run = failing
        assert run.first_fail_cycle is not None

        activation = true_activation_cycle(reference, buggy, test, mutation.line)
        kept.append(SeededMutant(operator, mutation, run.first_fail_cycle, activation))
        if limit is not None and len(kept) >= limit:
            break

    logger.info("mutants_seeded", design=reference.name, kept=len(kept))
    return kept


def materialize_corpus(manifest: CorpusManifest, out_dir: str | Path) -> dict[str, Path]:
    """
    Write the buggy design of every mutation entry to disk.

    Args:
        manifest: Loaded corpus manifest
        out_dir: Directory receiving `<id>.v` files

    Returns:
        bug id -> written path
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: dict[str, Path] = {}
    for entry in manifest:
        if entry.mutation is None:
            continue
        path = out / f"{entry.id}.v"
        path.write_text(entry.buggy_source(), encoding="utf-8")
        written[entry.id] = path
    logger.info("corpus_materialized", out_dir=str(out), files=len(written))
    return written
