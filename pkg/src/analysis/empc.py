"""
Estimated minimal propagation cycles (EMPC).

For every PDG node, the minimum number of clock cycles a corrupted value at
that node needs to reach a primary output, following only data edges whose
statements the trace shows executing. Registers cost one cycle to cross.

The map starts with outputs at 0 and everything else at infinity, then is
relaxed backward once per cycle, from the first failing cycle down to 0.
"""

import math
from collections import deque
from collections.abc import Iterable, Iterator

from src.errors import NoFailure, TraceFormatError
from src.pdg.graph import Node, Pdg, StatementNode, node_sort_key
from src.traces.model import CycleResults, ExecutionTrace, first_fail_cycle
from src.utils.logger import get_logger

logger = get_logger(__name__)

INFINITY = math.inf

Empc = int | float


class EmpcMap:
    """Node -> EMPC value (nonnegative int or math.inf)"""

    def __init__(self, values: dict[Node, Empc]) -> None:
        self._values = values

    @classmethod
    def initial(cls, pdg: Pdg) -> "EmpcMap":
        outputs = set(pdg.outputs)
        return cls({n: 0 if n in outputs else INFINITY for n in pdg.graph.nodes})

    def __getitem__(self, node: Node) -> Empc:
        return self._values[node]

    def __setitem__(self, node: Node, value: Empc) -> None:
        self._values[node] = value

    def __iter__(self) -> Iterator[Node]:
        return iter(sorted(self._values, key=node_sort_key))

    def __len__(self) -> int:
        return len(self._values)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EmpcMap):
            return NotImplemented
        return self._values == other._values

    def __repr__(self) -> str:
        finite = sum(1 for v in self._values.values() if v != INFINITY)
        return f"EmpcMap(nodes={len(self)}, finite={finite})"

    def copy(self) -> "EmpcMap":
        return EmpcMap(dict(self._values))

    def for_statement(self, stmt_id: int) -> Empc:
        return self._values[StatementNode(stmt_id)]

    def statements(self) -> dict[int, Empc]:
        return {
            n.stmt_id: v
            for n, v in sorted(self._values.items(), key=lambda kv: node_sort_key(kv[0]))
            if isinstance(n, StatementNode)
        }

    def finite_nodes(self) -> list[Node]:
        return sorted((n for n, v in self._values.items() if v != INFINITY), key=node_sort_key)

    def to_csv(self) -> str:
        """`stmt_id,empc` rows with `inf` for unreachable statements"""
        rows = ["stmt_id,empc"]
        for stmt_id, value in self.statements().items():
            rows.append(f"{stmt_id},{'inf' if value == INFINITY else int(value)}")
        return "\n".join(rows) + "\n"


def dynamic_prop(pdg: Pdg, activated: Iterable[int], empc: EmpcMap) -> EmpcMap:
    """
    Relax an EMPC map over the subgraph activated in one cycle.

    The worklist is seeded with every node holding a finite value, outputs
    first. A statement predecessor is eligible only if it executed in the
    cycle; signal nodes are always eligible.

    Args:
        pdg: Dependency graph
        activated: stmt_ids executed in the cycle
        empc: Map to relax (updated in place)

    Returns:
        The same map, at a local fixed point
    """
    active = frozenset(activated)
    outputs = pdg.outputs
    output_set = set(outputs)
    seeds = outputs + [n for n in empc.finite_nodes() if n not in output_set]

    worklist: deque[Node] = deque(seeds)
    queued: set[Node] = set(seeds)

    while worklist:
        head = worklist.popleft()
        queued.discard(head)
        candidate = pdg.delay(head) + empc[head]

        for pred in pdg.data_predecessors(head):
            if isinstance(pred, StatementNode) and pred.stmt_id not in active:
                continue
            if candidate < empc[pred]:
                empc[pred] = candidate
                if pred not in queued:
                    worklist.append(pred)
                    queued.add(pred)

    return empc


def _sweep(pdg: Pdg, trace: ExecutionTrace, fail_cycle: int, empc: EmpcMap) -> None:
    for cycle in range(fail_cycle, -1, -1):
        dynamic_prop(pdg, trace.executed(cycle), empc)


def compute_empc(
    pdg: Pdg,
    trace: ExecutionTrace,
    results: CycleResults,
    fixpoint: bool = False,
) -> EmpcMap:
    """
    Compute the EMPC of every node for one failing run.

    Args:
        pdg: Dependency graph of the design
        trace: Execution trace of the run
        results: Verdicts of the run
        fixpoint: Repeat sweeps until no value changes

    Returns:
        EmpcMap; statements never executed in [0, first fail] stay infinite

    Raises:
        NoFailure: Every cycle passes
        TraceFormatError: Trace and design disagree on the statement count
    """
    if trace.stmt_count != pdg.stmt_count:
        raise TraceFormatError(
            f"trace declares {trace.stmt_count} statements but the design has {pdg.stmt_count}",
            line=1,
        )
    if len(trace) != len(results):
        raise TraceFormatError(
            f"trace has {len(trace)} cycles but results have {len(results)}", line=1
        )

    fail_cycle = first_fail_cycle(results)
    if fail_cycle is None:
        raise NoFailure("no failing cycle: nothing to localize")

    empc = EmpcMap.initial(pdg)
    _sweep(pdg, trace, fail_cycle, empc)
    sweeps = 1

    if fixpoint:
        while True:
            before = empc.copy()
            _sweep(pdg, trace, fail_cycle, empc)
            sweeps += 1
            if empc == before:
                break

    finite = sum(1 for v in empc.statements().values() if v != INFINITY)
    logger.debug(
        "empc_computed",
        fail_cycle=fail_cycle,
        sweeps=sweeps,
        finite_statements=finite,
        statements=pdg.stmt_count,
    )
    return empc
