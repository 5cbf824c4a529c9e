"""Execution traces, verdicts and the JSONL interchange format."""

from src.traces.jsonl_io import dumps_trace, load_trace, loads_trace, save_trace
from src.traces.model import CycleResults, ExecutionTrace, TestRun, first_fail_cycle

__all__ = [
    "CycleResults",
    "ExecutionTrace",
    "TestRun",
    "first_fail_cycle",
    "dumps_trace",
    "load_trace",
    "loads_trace",
    "save_trace",
]
