"""
Statement execution traces and per-cycle verdicts.

An ExecutionTrace is a read-only boolean matrix (cycles x statements); row c
holds the statements executed in cycle c.
"""

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:
    from src.simulation.simulator import CycleRecord


class ExecutionTrace:
    """Dense per-cycle statement spectrum"""

    def __init__(self, matrix: np.ndarray) -> None:
        if matrix.ndim != 2:
            raise ValueError(f"trace matrix must be 2-D, got shape {matrix.shape}")
        self._matrix = np.array(matrix, dtype=bool, copy=True)
        self._matrix.setflags(write=False)

    @classmethod
    def from_sets(cls, executed: Sequence[Iterable[int]], stmt_count: int) -> "ExecutionTrace":
        """
        Build a trace from one executed-id collection per cycle.

        Raises:
            ValueError: If an id is outside [0, stmt_count)
        """
        matrix = np.zeros((len(executed), stmt_count), dtype=bool)
        for cycle, ids in enumerate(executed):
            ids = list(ids)
            if any(i < 0 or i >= stmt_count for i in ids):
                raise ValueError(f"cycle {cycle}: stmt_id outside [0, {stmt_count})")
            matrix[cycle, ids] = True
        return cls(matrix)

    @classmethod
    def empty(cls, stmt_count: int) -> "ExecutionTrace":
        return cls(np.zeros((0, stmt_count), dtype=bool))

    @property
    def matrix(self) -> np.ndarray:
        return self._matrix

    @property
    def stmt_count(self) -> int:
        return self._matrix.shape[1]

    def __len__(self) -> int:
        return self._matrix.shape[0]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExecutionTrace):
            return NotImplemented
        return self._matrix.shape == other._matrix.shape and bool(
            np.array_equal(self._matrix, other._matrix)
        )

    def __repr__(self) -> str:
        return f"ExecutionTrace(cycles={len(self)}, stmt_count={self.stmt_count})"

    def executed(self, cycle: int) -> frozenset[int]:
        return frozenset(np.flatnonzero(self._matrix[cycle]).tolist())

    def was_executed(self, stmt_id: int, cycle: int) -> bool:
        return bool(self._matrix[cycle, stmt_id])

    def count(self, stmt_id: int, start: int = 0, stop: int | None = None) -> int:
        """Executions of a statement in cycles [start, stop)"""
        return int(self._matrix[start:stop, stmt_id].sum())

    def cycles_of(self, stmt_id: int) -> list[int]:
        return np.flatnonzero(self._matrix[:, stmt_id]).tolist()

    def prefix(self, stop: int) -> "ExecutionTrace":
        """View of cycles [0, stop)"""
        return ExecutionTrace(self._matrix[:stop])


class CycleResults:
    """Per-cycle pass (True) / fail (False) verdicts"""

    def __init__(self, verdicts: Iterable[bool]) -> None:
        self._verdicts = tuple(bool(v) for v in verdicts)

    def __len__(self) -> int:
        return len(self._verdicts)

    def __getitem__(self, cycle: int) -> bool:
        return self._verdicts[cycle]

    def __iter__(self) -> Iterator[bool]:
        return iter(self._verdicts)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CycleResults):
            return NotImplemented
        return self._verdicts == other._verdicts

    def __repr__(self) -> str:
        return "CycleResults([" + ", ".join("pass" if v else "fail" for v in self._verdicts) + "])"

    @property
    def verdicts(self) -> tuple[bool, ...]:
        return self._verdicts

    @property
    def failing_cycles(self) -> list[int]:
        return [c for c, passed in enumerate(self._verdicts) if not passed]

    @property
    def all_pass(self) -> bool:
        return all(self._verdicts)

    def as_array(self) -> np.ndarray:
        return np.array(self._verdicts, dtype=bool)


def first_fail_cycle(results: CycleResults) -> int | None:
    """
    Smallest cycle index with a failing verdict.

    Args:
        results: Per-cycle verdicts

    Returns:
        Cycle index, or None when every cycle passes
    """
    for cycle, passed in enumerate(results):
        if not passed:
            return cycle
    return None


@dataclass(frozen=True)
class TestRun:
    """One simulated test: its trace, verdicts and per-cycle records"""

    __test__ = False

    name: str
    trace: ExecutionTrace
    results: CycleResults
    records: tuple["CycleRecord", ...] = field(default=(), compare=False, repr=False)

    @property
    def first_fail_cycle(self) -> int | None:
        return first_fail_cycle(self.results)

    @property
    def failed(self) -> bool:
        return self.first_fail_cycle is not None
