"""
Cycle-accurate two-state interpreter.

Cycle protocol:
  1. apply inputs
  2. settle continuous assigns and combinational blocks to a fixed point
  3. sample outputs and compare against the golden values
  4. evaluate edge-sensitive blocks against the settled values, buffering
     nonblocking writes (blocking writes go to a block-local view)
  5. commit block-local views, then nonblocking writes in execution order
  6. advance the cycle counter

The executed set of a cycle is the union of the statements run in (2) and (4).
"""

from collections.abc import Callable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field

import networkx as nx

from src.design import Design
from src.errors import CombinationalLoop, NonConvergence, SimulationError, StimulusError
from src.frontend.ast_nodes import (
    AlwaysBlock,
    Assignment,
    CaseStatement,
    ContinuousAssign,
    DesignAst,
    Expr,
    IfStatement,
    LValue,
    Statement,
    walk_statements,
)
from src.frontend.expressions import evaluate, free_identifiers, mask, self_width
from src.frontend.statements import StatementContext, StatementTable, enumerate_statements
from src.pdg.classifier import SignalClassMap
from src.simulation.stimulus import Stimulus, StimulusCycle
from src.traces.model import CycleResults, ExecutionTrace, TestRun
from src.utils.logger import get_logger

logger = get_logger(__name__)

CombConstruct = ContinuousAssign | AlwaysBlock
Reader = Callable[[str], int]
Writer = Callable[[LValue, int, bool], None]


@dataclass(frozen=True)
class CycleRecord:
    """
    Everything observed in one cycle.

    Attributes:
        cycle: Cycle index
        executed: stmt_ids run in this cycle
        outputs: Output values sampled before the clock edge
        passed: Outputs equal the golden values (True when none were given)
        snapshot: Every signal at end of cycle (settled combinational
            values, registers after commit)
    """

    cycle: int
    executed: frozenset[int]
    outputs: Mapping[str, int]
    passed: bool
    snapshot: Mapping[str, int] = field(repr=False)

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"


@dataclass
class SimState:
    """Mutable simulation state of one elaborated design"""

    ast: DesignAst
    stmts: StatementTable
    values: dict[str, int]
    comb_order: list[CombConstruct]
    comb_stmt_count: int
    cycle: int = 0
    pending: list[tuple[LValue, int]] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.widths = self.ast.widths


# ============================================================================
# Statement execution
# ============================================================================


def _merge_target(old: int, target: LValue, value: int, width: int) -> int:
    """Write `value` into the selected bits of `old`"""
    if target.msb is None:
        return value & mask(width)
    assert target.lsb is not None
    span = mask(target.msb - target.lsb + 1) << target.lsb
    return (old & ~span) | ((value << target.lsb) & span)


def _target_width(target: LValue, widths: Mapping[str, int]) -> int:
    if target.msb is None:
        return widths[target.name]
    assert target.lsb is not None
    return target.msb - target.lsb + 1


def _case_matches(
    subject: Expr,
    label: Expr,
    read: Reader,
    widths: Mapping[str, int],
) -> bool:
    width = max(self_width(subject, widths), self_width(label, widths))
    return evaluate(subject, read, widths, width) == evaluate(label, read, widths, width)


def _exec_body(
    body: list[Statement],
    read: Reader,
    write: Writer,
    widths: Mapping[str, int],
    stmts: StatementTable,
    executed: set[int],
) -> None:
    for stmt in body:
        executed.add(stmts.id_of(stmt))

        if isinstance(stmt, Assignment):
            value = evaluate(stmt.expr, read, widths, _target_width(stmt.target, widths))
            write(stmt.target, value, stmt.blocking)

        elif isinstance(stmt, IfStatement):
            branch = stmt.then_body if evaluate(stmt.cond, read, widths) else stmt.else_body
            _exec_body(branch, read, write, widths, stmts, executed)

        elif isinstance(stmt, CaseStatement):
            chosen = next(
                (
                    item
                    for item in stmt.items
                    if not item.is_default
                    and any(_case_matches(stmt.subject, lb, read, widths) for lb in item.labels)
                ),
                stmt.default,
            )
            # No matching arm and no default: targets keep their values
            if chosen is not None:
                _exec_body(chosen.body, read, write, widths, stmts, executed)


# ============================================================================
# Elaboration
# ============================================================================


def _construct_reads(item: CombConstruct) -> set[str]:
    if isinstance(item, ContinuousAssign):
        return set(free_identifiers(item.expr))
    reads: set[str] = set()
    for stmt in walk_statements(item.body):
        if isinstance(stmt, Assignment):
            reads.update(free_identifiers(stmt.expr))
        elif isinstance(stmt, IfStatement):
            reads.update(free_identifiers(stmt.cond))
        else:
            reads.update(free_identifiers(stmt.subject))
            for case_item in stmt.items:
                for label in case_item.labels:
                    reads.update(free_identifiers(label))
    return reads


def _construct_writes(item: CombConstruct) -> set[str]:
    if isinstance(item, ContinuousAssign):
        return {item.target.name}
    return {s.target.name for s in walk_statements(item.body) if isinstance(s, Assignment)}


def _guarded_assignments(
    body: list[Statement], guard: frozenset[str] = frozenset()
) -> Iterator[tuple[Assignment, frozenset[str]]]:
    """Assignments of a body paired with the signals their enclosing conditions read"""
    for stmt in body:
        if isinstance(stmt, Assignment):
            yield stmt, guard
        elif isinstance(stmt, IfStatement):
            inner = guard | frozenset(free_identifiers(stmt.cond))
            yield from _guarded_assignments(stmt.then_body, inner)
            yield from _guarded_assignments(stmt.else_body, inner)
        else:
            inner = guard | frozenset(free_identifiers(stmt.subject))
            for case_item in stmt.items:
                labels = frozenset(n for lb in case_item.labels for n in free_identifiers(lb))
                yield from _guarded_assignments(case_item.body, inner | labels)


def _signal_graph(constructs: list[CombConstruct]) -> nx.DiGraph:
    """
    Combinational signal -> signal dependence.

    Within one always block, a read of a signal the block itself writes sees
    the block's own earlier write and adds no edge.
    """
    graph = nx.DiGraph()
    for item in constructs:
        if isinstance(item, ContinuousAssign):
            for name in free_identifiers(item.expr):
                graph.add_edge(name, item.target.name)
            continue
        own = _construct_writes(item)
        for stmt, guard in _guarded_assignments(item.body):
            for name in (guard | frozenset(free_identifiers(stmt.expr))) - own:
                graph.add_edge(name, stmt.target.name)
    return graph


def _comb_order(constructs: list[CombConstruct]) -> list[CombConstruct]:
    """
    Evaluation order of the combinational constructs.

    Only a cycle between signals is a CombinationalLoop. Constructs that feed
    each other through acyclic signal chains stay in source order and the
    settle fixpoint resolves them.
    """
    try:
        loop = nx.find_cycle(_signal_graph(constructs))
    except nx.NetworkXNoCycle:
        pass
    else:
        raise CombinationalLoop(f"combinational loop through {sorted({u for u, _ in loop})}")

    writes = [_construct_writes(c) for c in constructs]
    reads = [_construct_reads(c) for c in constructs]
    deps = nx.DiGraph()
    deps.add_nodes_from(range(len(constructs)))
    for i, written in enumerate(writes):
        for j, read in enumerate(reads):
            if i != j and written & read:
                deps.add_edge(i, j)

    groups = nx.condensation(deps)
    members: dict[int, list[int]] = {g: [] for g in groups.nodes}
    for index, group in groups.graph["mapping"].items():
        members[group].append(index)
    order: list[int] = []
    for group in nx.lexicographical_topological_sort(groups, key=lambda g: min(members[g])):
        order.extend(sorted(members[group]))
    return [constructs[i] for i in order]


def elaborate(
    ast: DesignAst,
    classes: SignalClassMap,
    stmts: StatementTable | None = None,
) -> SimState:
    """
    Build the initial simulation state of a design.

    Args:
        ast: Parsed design
        classes: Its signal classification
        stmts: Its statement table (enumerated when omitted)

    Returns:
        SimState at cycle 0 with all signals 0 and combinational logic settled

    Raises:
        CombinationalLoop: Combinational signals depend on each other in a cycle
    """
    stmts = stmts if stmts is not None else enumerate_statements(ast)

    constructs: list[CombConstruct] = [
        item for item in ast.items if isinstance(item, ContinuousAssign) or item.clock is None
    ]
    comb_stmt_count = sum(
        1 for e in stmts if e.context in (StatementContext.COMB, StatementContext.CONTINUOUS)
    )

    state = SimState(
        ast=ast,
        stmts=stmts,
        values={name: 0 for name in ast.signals},
        comb_order=_comb_order(constructs),
        comb_stmt_count=comb_stmt_count,
    )
    _settle(state)

    logger.debug(
        "design_elaborated",
        module=ast.module_name,
        comb_constructs=len(constructs),
        state_signals=len(classes.state_signals),
    )
    return state


# ============================================================================
# Cycle stepping
# ============================================================================


def _settle(state: SimState) -> frozenset[int]:
    widths = state.widths
    values = state.values

    def read(name: str) -> int:
        return values[name]

    # `<=` in a combinational block takes effect immediately
    def write(target: LValue, value: int, blocking: bool) -> None:
        values[target.name] = _merge_target(values[target.name], target, value, widths[target.name])

    bound = state.comb_stmt_count + 1
    for _ in range(bound):
        before = dict(values)
        executed: set[int] = set()
        for item in state.comb_order:
            if isinstance(item, ContinuousAssign):
                executed.add(state.stmts.id_of(item))
                value = evaluate(item.expr, read, widths, _target_width(item.target, widths))
                write(item.target, value, True)
            else:
                _exec_body(item.body, read, write, widths, state.stmts, executed)
        if values == before:
            return frozenset(executed)

    raise NonConvergence(f"combinational settle did not converge within {bound} iterations")


def _clock_edge(state: SimState) -> frozenset[int]:
    widths = state.widths
    values = state.values
    executed: set[int] = set()
    overlays: list[dict[str, int]] = []
    state.pending = []

    for block in state.ast.edge_blocks:
        overlay: dict[str, int] = {}

        def read(name: str, overlay: dict[str, int] = overlay) -> int:
            return overlay[name] if name in overlay else values[name]

        def write(
            target: LValue,
            value: int,
            blocking: bool,
            overlay: dict[str, int] = overlay,
            read: Reader = read,
        ) -> None:
            if blocking:
                overlay[target.name] = _merge_target(
                    read(target.name), target, value, widths[target.name]
                )
            else:
                state.pending.append((target, value))

        _exec_body(block.body, read, write, widths, state.stmts, executed)
        overlays.append(overlay)

    for overlay in overlays:
        values.update(overlay)
    for target, value in state.pending:
        values[target.name] = _merge_target(values[target.name], target, value, widths[target.name])
    state.pending = []
    return frozenset(executed)


def step_cycle(
    state: SimState,
    cycle_inputs: Mapping[str, int],
    expected_outputs: Mapping[str, int] | None = None,
) -> CycleRecord:
    """
    Advance the design by one clock cycle.

    Args:
        state: Elaborated state (mutated in place)
        cycle_inputs: Value of every non-clock input
        expected_outputs: Golden output values, or None to skip comparison

    Returns:
        CycleRecord of the cycle just simulated

    Raises:
        StimulusError: Missing or unknown inputs
        NonConvergence: Combinational settle exceeded its bound
    """
    ast = state.ast
    clock = ast.clock
    required = [name for name in ast.inputs if name != clock]
    missing = [name for name in required if name not in cycle_inputs]
    unknown = sorted(set(cycle_inputs) - set(required))
    if missing or unknown:
        raise StimulusError(f"inputs mismatch: missing {missing}, unknown {unknown}", state.cycle)

    # 1. apply inputs
    for name, value in cycle_inputs.items():
        state.values[name] = value & mask(state.widths[name])

    # 2. settle
    executed = set(_settle(state))

    # 3. sample and compare
    outputs = {name: state.values[name] for name in ast.outputs}
    passed = expected_outputs is None or all(
        outputs[name] == expected_outputs[name] for name in outputs
    )

    # 4-5. clock edge and commit
    executed |= _clock_edge(state)

    record = CycleRecord(
        cycle=state.cycle,
        executed=frozenset(executed),
        outputs=outputs,
        passed=passed,
        snapshot=dict(state.values),
    )

    # 6. advance
    state.cycle += 1
    return record


def run_records(state: SimState, cycles: Sequence[StimulusCycle]) -> list[CycleRecord]:
    """Step through every stimulus cycle, tagging errors with the cycle index"""
    records: list[CycleRecord] = []
    for cycle in cycles:
        try:
            records.append(step_cycle(state, cycle.inputs, cycle.expected_outputs))
        except SimulationError as exc:
            if exc.cycle is not None:
                raise
            raise exc.at_cycle(state.cycle) from exc
    return records


def records_to_trace(
    records: list[CycleRecord], stmt_count: int
) -> tuple[ExecutionTrace, CycleResults]:
    trace = ExecutionTrace.from_sets([r.executed for r in records], stmt_count)
    return trace, CycleResults(r.passed for r in records)


def run(state: SimState, stim: Stimulus) -> tuple[ExecutionTrace, CycleResults]:
    """
    Simulate a whole stimulus from the given state.

    Args:
        state: Elaborated state at cycle 0
        stim: Stimulus to apply

    Returns:
        (ExecutionTrace, CycleResults)

    Raises:
        SimulationError: Any step error, tagged with its cycle index
    """
    records = run_records(state, stim.cycles)
    return records_to_trace(records, len(state.stmts))


def simulate(design: Design, stim: Stimulus) -> TestRun:
    """
    Elaborate a design afresh and run one test on it.

    Args:
        design: Design bundle
        stim: Stimulus of one test

    Returns:
        TestRun with trace, verdicts and per-cycle records
    """
    state = elaborate(design.ast, design.classes, design.statements)
    records = run_records(state, stim.cycles)
    trace, results = records_to_trace(records, len(design.statements))

    logger.debug(
        "simulation_completed",
        module=design.name,
        test=stim.name,
        cycles=len(records),
        failing=len(results.failing_cycles),
    )
    return TestRun(stim.name, trace, results, tuple(records))


def complete_golden_outputs(stim: Stimulus, reference: Design) -> Stimulus:
    """
    Fill in expected outputs by simulating a reference design.

    Args:
        stim: Stimulus with or without expected outputs
        reference: Bug-free design

    Returns:
        Stimulus whose expected outputs are the reference outputs
    """
    state = elaborate(reference.ast, reference.classes, reference.statements)
    bare = [StimulusCycle(c.inputs, None) for c in stim.cycles]
    records = run_records(state, bare)
    return stim.with_expected([dict(r.outputs) for r in records])
