"""Shared fixtures: the two-state FSM used across the suite, plus small helpers."""

import sys
from pathlib import Path

import pytest

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.design import Design, load_design, parse_source
from src.simulation.simulator import complete_golden_outputs, simulate
from src.simulation.stimulus import Stimulus, load_stimulus, parse_stimulus
from src.traces.model import TestRun

ROOT = Path(__file__).parent.parent
CORPUS_DIR = ROOT / "corpus"
DESIGNS_DIR = CORPUS_DIR / "designs"
STIMULI_DIR = CORPUS_DIR / "stimuli"

# stmt ids of the FSM fixture
F1_STATE_UPDATE = 0
F1_RESET_IF = 1
F1_RESET_ASSIGN = 2
F1_CASE = 3
F1_S0_ARM = 4
F1_S1_ARM = 5
F1_OUT_ASSIGN = 6
F1_BUG_LINE = 23


def cycles(*rows: dict) -> dict:
    """Single-test stimulus document from input rows"""
    return {"cycles": [{"inputs": row} for row in rows]}


@pytest.fixture
def build():
    """Parse inline Verilog into a Design"""

    def _build(text: str, filename: str = "test.v") -> Design:
        return parse_source(text, filename)

    return _build


@pytest.fixture(scope="session")
def f1_reference() -> Design:
    return load_design(DESIGNS_DIR / "fsm_f1.v")


@pytest.fixture(scope="session")
def f1_buggy() -> Design:
    return load_design(DESIGNS_DIR / "fsm_f1_buggy.v")


@pytest.fixture(scope="session")
def f1_tests(f1_buggy: Design) -> list[Stimulus]:
    return load_stimulus(STIMULI_DIR / "fsm_f1.json", f1_buggy.ast)


@pytest.fixture(scope="session")
def f1_run(f1_buggy: Design, f1_tests: list[Stimulus]) -> TestRun:
    return simulate(f1_buggy, f1_tests[0])


@pytest.fixture
def run_design():
    """Simulate one stimulus document, golden outputs from an optional reference"""

    def _run(design: Design, document: dict, reference: Design | None = None) -> list[TestRun]:
        tests = parse_stimulus(document, design.ast)
        if reference is not None:
            tests = [complete_golden_outputs(t, reference) for t in tests]
        return [simulate(design, t) for t in tests]

    return _run
