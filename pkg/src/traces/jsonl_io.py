"""
JSON-lines interchange format for traces.

    {"stmt_count":7}
    {"cycle":0,"executed":[0,1,2,6],"pass":true}
    ...

The header line is mandatory; records follow in cycle order from 0.
"""

import json
from pathlib import Path

from config.settings import settings
from src.errors import BoundsError, FormatError
from src.traces.model import CycleResults, ExecutionTrace
from src.utils.logger import get_logger
from src.utils.schema import get_validator

logger = get_logger(__name__)

_SEPARATORS = (",", ":")


def dumps_trace(trace: ExecutionTrace, results: CycleResults) -> str:
    """
    Serialize a trace and its verdicts.

    Args:
        trace: Execution trace
        results: Verdicts of the same run

    Returns:
        JSONL text ending in a newline

    Raises:
        ValueError: If trace and results differ in length
    """
    if len(trace) != len(results):
        raise ValueError(f"trace has {len(trace)} cycles but results have {len(results)}")

    lines = [json.dumps({"stmt_count": trace.stmt_count}, separators=_SEPARATORS)]
    for cycle in range(len(trace)):
        record = {
            "cycle": cycle,
            "executed": sorted(trace.executed(cycle)),
            "pass": results[cycle],
        }
        lines.append(json.dumps(record, separators=_SEPARATORS))
    return "\n".join(lines) + "\n"


def save_trace(path: str | Path, trace: ExecutionTrace, results: CycleResults) -> None:
    path = Path(path)
    path.write_text(dumps_trace(trace, results), encoding="utf-8")
    logger.info("trace_saved", path=str(path), cycles=len(trace))


def _parse_line(text: str, line_no: int, definition: str) -> dict:
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"invalid JSON: {e.msg}", line_no) from None

    errors = get_validator(settings.trace_schema_path, definition).errors(document)
    if errors:
        raise FormatError(f"invalid {definition}: {errors[0]}", line_no)
    return document


def loads_trace(text: str) -> tuple[ExecutionTrace, CycleResults]:
    """
    Parse JSONL trace text.

    Args:
        text: File contents

    Returns:
        (ExecutionTrace, CycleResults)

    Raises:
        FormatError: Malformed line, missing header, non-contiguous cycles
        BoundsError: stmt_id not below the declared statement count
    """
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise FormatError("missing header line", 1)

    header = _parse_line(lines[0], 1, "header")
    stmt_count = int(header["stmt_count"])

    executed: list[list[int]] = []
    verdicts: list[bool] = []
    for line_no, line in enumerate(lines[1:], start=2):
        if not line.strip():
            raise FormatError("blank line inside trace", line_no)
        record = _parse_line(line, line_no, "record")

        cycle = int(record["cycle"])
        if cycle != len(executed):
            raise FormatError(f"expected cycle {len(executed)}, got {cycle}", line_no)

        ids = [int(i) for i in record["executed"]]
        out_of_range = [i for i in ids if i >= stmt_count]
        if out_of_range:
            raise BoundsError(
                f"stmt_id {out_of_range[0]} outside declared stmt_count {stmt_count}", line_no
            )
        executed.append(ids)
        verdicts.append(bool(record["pass"]))

    return ExecutionTrace.from_sets(executed, stmt_count), CycleResults(verdicts)


def load_trace(path: str | Path) -> tuple[ExecutionTrace, CycleResults]:
    path = Path(path)
    trace, results = loads_trace(path.read_text(encoding="utf-8"))
    logger.info("trace_loaded", path=str(path), cycles=len(trace), stmt_count=trace.stmt_count)
    return trace, results
