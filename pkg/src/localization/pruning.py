"""
Trace pruning: cycles after a statement's activation cycle are polluted by
corrupted state, so they are cut from that statement's view of the trace.
"""

from enum import Enum

from src.traces.model import ExecutionTrace


class TruncationLevel(str, Enum):
    FULL = "full"  # keep [0, C_act]
    HALF = "half"  # also keep the first half of the cycles after C_act
    NONE = "none"  # keep everything


def retained_stop(c_act: int, length: int, level: TruncationLevel) -> int:
    """
    Exclusive end of the retained window for one statement.

    Args:
        c_act: Activation cycle, 0 <= c_act < length
        length: Number of cycles in the trace
        level: Truncation level

    Returns:
        Stop index; cycles [0, stop) are retained

    Raises:
        ValueError: If c_act is outside the trace
    """
    if not 0 <= c_act < length:
        raise ValueError(f"activation cycle {c_act} outside trace of {length} cycles")

    if level is TruncationLevel.FULL:
        return c_act + 1
    if level is TruncationLevel.HALF:
        after = length - 1 - c_act
        return c_act + 1 + after // 2
    return length


def prune_trace(
    trace: ExecutionTrace,
    c_act: int,
    level: TruncationLevel = TruncationLevel.FULL,
) -> ExecutionTrace:
    """
    Per-statement view of a trace cut after its activation cycle.

    Args:
        trace: Full execution trace
        c_act: Activation cycle of the statement being scored
        level: Truncation level

    Returns:
        Trace holding the retained cycles only
    """
    return trace.prefix(retained_stop(c_act, len(trace), level))
