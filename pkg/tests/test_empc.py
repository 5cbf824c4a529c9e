"""Tests for EMPC propagation."""

import random

import networkx as nx
import pytest

from src.analysis.empc import INFINITY, EmpcMap, compute_empc, dynamic_prop
from src.errors import NoFailure, TraceFormatError
from src.pdg.classifier import SignalClass
from src.pdg.graph import EdgeKind, Pdg, SignalNode, StatementNode
from src.traces.model import CycleResults, ExecutionTrace
from tests.conftest import F1_S1_ARM


def random_pdg(rng: random.Random) -> Pdg:
    """Bipartite statement/signal graph with random classes, delays and control edges"""
    graph = nx.DiGraph()
    stmts = [StatementNode(i) for i in range(rng.randint(1, 8))]
    for node in stmts:
        graph.add_node(node, delay=0, signal_class=None)

    signals = []
    for j in range(rng.randint(1, 8)):
        cls = rng.choice(list(SignalClass))
        delayed = cls is SignalClass.REGISTER or (cls is SignalClass.OUTPUT and rng.random() < 0.3)
        node = SignalNode(f"n{j}")
        graph.add_node(node, delay=1 if delayed else 0, signal_class=cls)
        signals.append(node)

    for stmt in stmts:
        for signal in signals:
            roll = rng.random()
            if roll < 0.3:
                graph.add_edge(signal, stmt, kind=EdgeKind.DATA)
            elif roll < 0.5:
                graph.add_edge(stmt, signal, kind=EdgeKind.DATA)
    for parent, child in zip(stmts, stmts[1:]):
        if rng.random() < 0.4:
            graph.add_edge(parent, child, kind=EdgeKind.CONTROL)
    return Pdg(graph)


def _inactive(node, active) -> bool:
    return isinstance(node, StatementNode) and node.stmt_id not in active


def shortest_to_outputs(pdg: Pdg, active: set[int]) -> dict:
    """Reference single-cycle EMPC: Dijkstra from the outputs over reversed data edges"""
    reverse = nx.DiGraph()
    keep = [n for n in pdg.graph.nodes if not _inactive(n, active)]
    reverse.add_nodes_from(keep)
    for u, v in pdg.edges_of(EdgeKind.DATA):
        if not _inactive(u, active) and not _inactive(v, active):
            reverse.add_edge(v, u, weight=pdg.delay(v))

    if not pdg.outputs:
        return {n: INFINITY for n in pdg.graph.nodes}
    dist = nx.multi_source_dijkstra_path_length(reverse, set(pdg.outputs), weight="weight")
    return {n: dist.get(n, INFINITY) for n in pdg.graph.nodes}


def path_minimum(pdg: Pdg, trace: ExecutionTrace, fail_cycle: int, fixpoint: bool) -> dict:
    """
    Reference EMPC by enumerating simple data paths to the outputs.

    A path's cost is the summed delay of every node after its start. Each
    statement on it must run in some cycle of [0, fail_cycle]; without
    fixpoint those cycles must also be non-decreasing toward the output.
    """
    data = nx.DiGraph()
    data.add_nodes_from(pdg.graph.nodes)
    data.add_edges_from(pdg.edges_of(EdgeKind.DATA))
    runs = {
        stmt: [c for c in range(fail_cycle + 1) if stmt in trace.executed(c)]
        for stmt in range(pdg.stmt_count)
    }

    def feasible(path: list) -> bool:
        earliest = 0
        for node in path:
            if not isinstance(node, StatementNode):
                continue
            usable = [c for c in runs[node.stmt_id] if fixpoint or c >= earliest]
            if not usable:
                return False
            earliest = usable[0]
        return True

    outputs = set(pdg.outputs)
    if not outputs:
        return {n: INFINITY for n in pdg.graph.nodes}
    reference = {}
    for node in pdg.graph.nodes:
        if node in outputs:
            reference[node] = 0
            continue
        costs = [
            sum(pdg.delay(n) for n in path[1:])
            for path in nx.all_simple_paths(data, node, outputs)
            if feasible(path)
        ]
        reference[node] = min(costs, default=INFINITY)
    return reference


def random_run(rng: random.Random, stmt_count: int) -> tuple[ExecutionTrace, CycleResults]:
    length = rng.randint(1, 6)
    executed = [
        {i for i in range(stmt_count) if rng.random() < 0.6} for _ in range(length)
    ]
    verdicts = [True] * length
    verdicts[rng.randrange(length)] = False
    return ExecutionTrace.from_sets(executed, stmt_count), CycleResults(verdicts)


class TestFsmEmpc:
    """EMPC of the buggy two-state FSM."""

    def test_statement_values(self, f1_buggy, f1_run):
        empc = compute_empc(f1_buggy.pdg, f1_run.trace, f1_run.results)
        assert empc.statements() == {0: 1, 1: 1, 2: 1, 3: 1, 4: 1, 5: INFINITY, 6: 0}

    def test_signal_values(self, f1_buggy, f1_run):
        empc = compute_empc(f1_buggy.pdg, f1_run.trace, f1_run.results)
        assert empc[SignalNode("out")] == 0
        assert empc[SignalNode("state")] == 0
        assert empc[SignalNode("next_state")] == 1
        assert empc[SignalNode("clk")] == INFINITY

    def test_never_executed_arm_stays_infinite(self, f1_buggy, f1_run):
        empc = compute_empc(f1_buggy.pdg, f1_run.trace, f1_run.results)
        assert empc.for_statement(F1_S1_ARM) == INFINITY

    def test_csv(self, f1_buggy, f1_run):
        empc = compute_empc(f1_buggy.pdg, f1_run.trace, f1_run.results)
        assert empc.to_csv() == "stmt_id,empc\n0,1\n1,1\n2,1\n3,1\n4,1\n5,inf\n6,0\n"

    def test_fixpoint_agrees_on_the_fsm(self, f1_buggy, f1_run):
        once = compute_empc(f1_buggy.pdg, f1_run.trace, f1_run.results)
        stable = compute_empc(f1_buggy.pdg, f1_run.trace, f1_run.results, fixpoint=True)
        assert once == stable

    def test_initial_map(self, f1_buggy):
        empc = EmpcMap.initial(f1_buggy.pdg)
        assert empc.finite_nodes() == [SignalNode("out")]
        assert len(empc) == 13


class TestEmpcErrors:
    def test_passing_run(self, f1_buggy):
        trace = ExecutionTrace.from_sets([{0}], 7)
        with pytest.raises(NoFailure):
            compute_empc(f1_buggy.pdg, trace, CycleResults([True]))

    def test_statement_count_mismatch(self, f1_buggy):
        trace = ExecutionTrace.from_sets([{0}], 5)
        with pytest.raises(TraceFormatError, match="declares 5 statements"):
            compute_empc(f1_buggy.pdg, trace, CycleResults([False]))

    def test_length_mismatch(self, f1_buggy):
        trace = ExecutionTrace.from_sets([{0}, {0}], 7)
        with pytest.raises(TraceFormatError, match="2 cycles"):
            compute_empc(f1_buggy.pdg, trace, CycleResults([False]))


class TestRandomGraphs:
    """Propagation against reference shortest-path computations."""

    def test_single_cycle_matches_shortest_paths(self):
        for seed in range(500):
            rng = random.Random(seed)
            pdg = random_pdg(rng)
            active = {i for i in range(pdg.stmt_count) if rng.random() < 0.7}

            empc = dynamic_prop(pdg, active, EmpcMap.initial(pdg))
            expected = shortest_to_outputs(pdg, active)
            assert {n: empc[n] for n in pdg.graph.nodes} == expected, f"seed {seed}"

    @pytest.mark.parametrize("fixpoint", [False, True])
    def test_sweep_matches_path_enumeration(self, fixpoint):
        for seed in range(500):
            rng = random.Random(seed)
            pdg = random_pdg(rng)
            trace, results = random_run(rng, pdg.stmt_count)

            expected = path_minimum(pdg, trace, results.failing_cycles[0], fixpoint)
            empc = compute_empc(pdg, trace, results, fixpoint=fixpoint)
            assert {n: empc[n] for n in pdg.graph.nodes} == expected, f"seed {seed}"

    def test_propagation_never_raises_a_value(self):
        for seed in range(200):
            rng = random.Random(seed)
            pdg = random_pdg(rng)
            empc = EmpcMap.initial(pdg)
            for _ in range(3):
                before = empc.copy()
                active = {i for i in range(pdg.stmt_count) if rng.random() < 0.5}
                dynamic_prop(pdg, active, empc)
                assert all(empc[n] <= before[n] for n in pdg.graph.nodes), f"seed {seed}"

    def test_fixpoint_is_stable_under_another_sweep(self):
        for seed in range(100):
            rng = random.Random(seed)
            pdg = random_pdg(rng)
            trace, results = random_run(rng, pdg.stmt_count)

            stable = compute_empc(pdg, trace, results, fixpoint=True)
            again = stable.copy()
            for cycle in range(results.failing_cycles[0], -1, -1):
                dynamic_prop(pdg, trace.executed(cycle), again)
            assert again == stable, f"seed {seed}"
