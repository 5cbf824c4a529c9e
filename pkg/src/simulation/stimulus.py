"""
Stimulus files: per-cycle inputs and golden outputs.

Two layouts are accepted:

    {"cycles": [{"inputs": {...}, "expected_outputs": {...}}, ...]}
    {"tests": [{"name": "t0", "cycles": [...]}, ...]}

The clock is implicit (one edge per cycle) and must not appear in inputs.
"""

import json
from collections.abc import Mapping
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from config.settings import settings
from src.errors import StimulusError
from src.frontend.ast_nodes import DesignAst
from src.simulation.values import fits, format_value, parse_value
from src.utils.logger import get_logger
from src.utils.schema import get_validator

logger = get_logger(__name__)


@dataclass(frozen=True)
class StimulusCycle:
    inputs: Mapping[str, int]
    expected_outputs: Mapping[str, int] | None = None


@dataclass(frozen=True)
class Stimulus:
    """One test: an ordered sequence of cycles"""

    name: str
    cycles: tuple[StimulusCycle, ...]

    def __len__(self) -> int:
        return len(self.cycles)

    @property
    def has_golden(self) -> bool:
        return all(c.expected_outputs is not None for c in self.cycles)

    def with_expected(self, expected: list[dict[str, int]]) -> "Stimulus":
        """Copy with golden outputs replaced cycle by cycle"""
        return Stimulus(
            self.name,
            tuple(
                StimulusCycle(cycle.inputs, outputs)
                for cycle, outputs in zip(self.cycles, expected, strict=True)
            ),
        )

    def to_dict(self, ast: DesignAst) -> dict[str, Any]:
        """Serializable form using canonical value spellings"""
        widths = ast.widths
        cycles = []
        for cycle in self.cycles:
            entry: dict[str, Any] = {
                "inputs": {k: format_value(v, widths[k]) for k, v in sorted(cycle.inputs.items())}
            }
            if cycle.expected_outputs is not None:
                entry["expected_outputs"] = {
                    k: format_value(v, widths[k])
                    for k, v in sorted(cycle.expected_outputs.items())
                }
            cycles.append(entry)
        return {"name": self.name, "cycles": cycles}


def _convert(
    raw: Mapping[str, Any],
    allowed: list[str],
    ast: DesignAst,
    what: str,
    test: str,
    cycle: int,
) -> dict[str, int]:
    unknown = sorted(set(raw) - set(allowed))
    if unknown:
        raise StimulusError(f"test '{test}': unknown {what} {unknown}", cycle)
    missing = [name for name in allowed if name not in raw]
    if missing:
        raise StimulusError(f"test '{test}': missing {what} {missing}", cycle)

    values: dict[str, int] = {}
    for name in sorted(raw):
        try:
            value = parse_value(raw[name])
        except ValueError as e:
            raise StimulusError(f"test '{test}': {what} '{name}': {e}", cycle) from e
        width = ast.width_of(name)
        if not fits(value, width):
            raise StimulusError(
                f"test '{test}': value {raw[name]!r} for '{name}' exceeds {width} bits", cycle
            )
        values[name] = value
    return values


def parse_stimulus(data: Any, ast: DesignAst, default_name: str = "test") -> list[Stimulus]:
    """
    Validate and convert a decoded stimulus document.

    Args:
        data: Decoded JSON document
        ast: Design the stimulus drives
        default_name: Test name for the single-test layout

    Returns:
        One Stimulus per test

    Raises:
        StimulusError: On schema violations, port mismatches or width overflow
    """
    errors = get_validator(settings.stimulus_schema_path).errors(data)
    if errors:
        raise StimulusError(f"stimulus does not match schema: {'; '.join(errors[:5])}")

    if "cycles" in data:
        raw_tests = [(data.get("name", default_name), data["cycles"])]
    else:
        raw_tests = [(t.get("name", f"t{i}"), t["cycles"]) for i, t in enumerate(data["tests"])]

    names = [name for name, _ in raw_tests]
    if len(set(names)) != len(names):
        raise StimulusError(f"duplicate test names in {names}")

    clock = ast.clock
    inputs = [name for name in ast.inputs if name != clock]
    outputs = ast.outputs

    tests: list[Stimulus] = []
    for name, raw_cycles in raw_tests:
        cycles: list[StimulusCycle] = []
        for index, raw in enumerate(raw_cycles):
            if clock is not None and clock in raw["inputs"]:
                raise StimulusError(
                    f"test '{name}': clock '{clock}' is implicit and must not be driven", index
                )
            values = _convert(raw["inputs"], inputs, ast, "inputs", name, index)
            expected = None
            if "expected_outputs" in raw:
                expected = _convert(raw["expected_outputs"], outputs, ast, "outputs", name, index)
            cycles.append(StimulusCycle(values, expected))

        with_golden = sum(c.expected_outputs is not None for c in cycles)
        if 0 < with_golden < len(cycles):
            raise StimulusError(
                f"test '{name}': expected_outputs must be given for every cycle or none"
            )
        tests.append(Stimulus(name, tuple(cycles)))

    return tests


def load_stimulus(path: str | Path, ast: DesignAst) -> list[Stimulus]:
    """
    Load a stimulus file for a design.

    Args:
        path: JSON stimulus file
        ast: Design the stimulus drives

    Returns:
        One Stimulus per test

    Raises:
        StimulusError: Unreadable JSON or any parse_stimulus failure
    """
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise StimulusError(f"{path}: invalid JSON at line {e.lineno}: {e.msg}") from None
    except UnicodeDecodeError as e:
        raise StimulusError(f"{path}: not UTF-8 text ({e.reason})") from None

    tests = parse_stimulus(data, ast, default_name=path.stem)
    logger.debug(
        "stimulus_loaded",
        path=str(path),
        tests=len(tests),
        cycles=sum(len(t) for t in tests),
    )
    return tests
