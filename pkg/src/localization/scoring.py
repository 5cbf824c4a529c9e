"""
Dual suspiciousness score: (aef, 1/aep).

aef counts failing tests whose trace executes the statement exactly at its
activation cycle. aep counts executions that cannot be the activation:
cycles before C_act, the post-activation window kept by the truncation
level, and every execution in passing tests.
"""

import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

from src.localization.activation import ActivationMap
from src.localization.pruning import TruncationLevel, retained_stop
from src.traces.model import ExecutionTrace


@dataclass(frozen=True)
class SuspicionScore:
    aef: int
    aep: int

    @property
    def inv_aep(self) -> float:
        return math.inf if self.aep == 0 else 1.0 / self.aep

    @property
    def is_candidate(self) -> bool:
        return self.aef > 0

    def to_dict(self) -> dict[str, Any]:
        inv = self.inv_aep
        return {
            "aef": self.aef,
            "aep": self.aep,
            "inv_aep": "inf" if inv == math.inf else round(inv, 6),
        }


def dual_score(
    stmt_id: int,
    activations: Sequence[ActivationMap],
    failing: Sequence[ExecutionTrace],
    passing: Sequence[ExecutionTrace] = (),
    truncation: TruncationLevel = TruncationLevel.FULL,
) -> SuspicionScore:
    """
    Score one statement over every failing and passing test.

    Args:
        stmt_id: Statement to score
        activations: One ActivationMap per failing test
        failing: Traces of the failing tests, aligned with activations
        passing: Traces of the passing tests
        truncation: How much of each failing trace after C_act is kept

    Returns:
        SuspicionScore; a test excluding the statement contributes nothing
    """
    aef = 0
    aep = 0
    for activation, trace in zip(activations, failing, strict=True):
        entry = activation[stmt_id]
        if entry.excluded:
            continue
        c_act = entry.c_act
        assert c_act is not None

        if trace.was_executed(stmt_id, c_act):
            aef += 1
        aep += trace.count(stmt_id, 0, c_act)
        stop = retained_stop(c_act, len(trace), truncation)
        aep += trace.count(stmt_id, c_act + 1, stop)

    for trace in passing:
        aep += trace.count(stmt_id)

    return SuspicionScore(aef, aep)
