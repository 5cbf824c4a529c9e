"""
Seeded-bug corpus manifests.

Each entry pairs a reference design with a buggy variant (a file, or a
single-line textual mutation of the reference) and a bug-triggering
stimulus. Paths are resolved relative to the manifest file.
"""

import json
from collections.abc import Iterator
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from config.settings import settings
from src.errors import ManifestValidationError
from src.utils.logger import get_logger
from src.utils.schema import get_validator

logger = get_logger(__name__)


@dataclass(frozen=True)
class Mutation:
    """Replace `original` with `replacement` on one source line"""

    line: int
    original: str
    replacement: str
    column: int | None = None

    def apply(self, source: str) -> str:
        """
        Apply the mutation to source text.

        Args:
            source: Reference design source

        Returns:
            Mutated source (line endings preserved)

        Raises:
            ValueError: Line missing, or `original` not found at the given place
        """
        lines = source.splitlines(keepends=True)
        if not 1 <= self.line <= len(lines):
            raise ValueError(f"mutation line {self.line} outside {len(lines)}-line source")

        text = lines[self.line - 1]
        if self.column is not None:
            start = self.column - 1
            if text[start : start + len(self.original)] != self.original:
                raise ValueError(
                    f"'{self.original}' not found at {self.line}:{self.column}"
                )
        else:
            start = text.find(self.original)
            if start < 0:
                raise ValueError(f"'{self.original}' not found on line {self.line}")

        lines[self.line - 1] = text[:start] + self.replacement + text[start + len(self.original) :]
        return "".join(lines)

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "line": self.line,
            "original": self.original,
            "replacement": self.replacement,
        }
        if self.column is not None:
            data["column"] = self.column
        return data


@dataclass(frozen=True)
class CorpusEntry:
    id: str
    category: str
    design: Path
    stimulus: Path
    ground_truth_line: int
    buggy_design: Path | None = None
    mutation: Mutation | None = None
    true_activation_cycle: int | None = None
    operator: str | None = None
    description: str = ""

    def reference_source(self) -> str:
        return self.design.read_text(encoding="utf-8")

    def buggy_source(self) -> str:
        if self.buggy_design is not None:
            return self.buggy_design.read_text(encoding="utf-8")
        assert self.mutation is not None
        return self.mutation.apply(self.reference_source())

    @property
    def buggy_filename(self) -> str:
        """Name used in locations; a mutated design keeps the reference name"""
        return str(self.buggy_design if self.buggy_design is not None else self.design)


@dataclass(frozen=True)
class CorpusManifest:
    name: str
    path: Path
    entries: tuple[CorpusEntry, ...] = field(default=())

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[CorpusEntry]:
        return iter(self.entries)

    def categories(self) -> list[str]:
        return sorted({e.category for e in self.entries})

    def of_category(self, category: str) -> list[CorpusEntry]:
        return [e for e in self.entries if e.category == category]


def _entry_from_dict(raw: dict[str, Any], base: Path) -> CorpusEntry:
    mutation = None
    if "mutation" in raw:
        m = raw["mutation"]
        mutation = Mutation(m["line"], m["original"], m["replacement"], m.get("column"))

    return CorpusEntry(
        id=raw["id"],
        category=raw["category"],
        design=base / raw["design"],
        stimulus=base / raw["stimulus"],
        ground_truth_line=raw["ground_truth_line"],
        buggy_design=base / raw["buggy_design"] if "buggy_design" in raw else None,
        mutation=mutation,
        true_activation_cycle=raw.get("true_activation_cycle"),
        operator=raw.get("operator"),
        description=raw.get("description", ""),
    )


def parse_manifest(data: Any, path: Path) -> CorpusManifest:
    """
    Validate a decoded manifest and resolve its paths.

    Args:
        data: Decoded JSON document
        path: Manifest file (paths are relative to its directory)

    Returns:
        CorpusManifest

    Raises:
        ManifestValidationError: Schema violations, duplicate ids or missing files
    """
    errors = get_validator(settings.corpus_schema_path).errors(data)
    if errors:
        raise ManifestValidationError(errors)

    base = path.parent
    entries = [_entry_from_dict(raw, base) for raw in data["entries"]]

    seen: set[str] = set()
    for entry in entries:
        if entry.id in seen:
            errors.append(f"{entry.id}: duplicate entry id")
        seen.add(entry.id)
        for label, file in (
            ("design", entry.design),
            ("stimulus", entry.stimulus),
            ("buggy_design", entry.buggy_design),
        ):
            if file is not None and not file.is_file():
                errors.append(f"{entry.id}: {label} file not found: {file}")

    if errors:
        raise ManifestValidationError(errors)

    return CorpusManifest(data.get("name", path.stem), path, tuple(entries))


def load_manifest(path: str | Path) -> CorpusManifest:
    """
    Load and validate a corpus manifest.

    Args:
        path: JSON manifest file

    Returns:
        CorpusManifest

    Raises:
        ManifestValidationError: Unreadable JSON or any parse_manifest failure
    """
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise ManifestValidationError([f"{path}: {e}"]) from None

    manifest = parse_manifest(data, path)
    logger.debug("manifest_loaded", path=str(path), entries=len(manifest))
    return manifest
