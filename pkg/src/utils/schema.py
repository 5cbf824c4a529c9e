"""
JSON Schema validation for stimulus, trace and corpus files.
"""

import json
from functools import lru_cache
from pathlib import Path
from typing import Any

from jsonschema import Draft7Validator, ValidationError as JSONSchemaValidationError

from src.utils.logger import get_logger

logger = get_logger(__name__)


class SchemaValidator:
    """
    Validates JSON documents against a draft-07 schema file.

    A `definition` name selects a sub-schema from the file's `definitions`
    block (trace headers and trace records share one file).
    """

    def __init__(self, schema_path: Path, definition: str | None = None) -> None:
        self.schema_path = schema_path
        schema = self._load_schema()
        if definition is not None:
            schema = {**schema, "$ref": f"#/definitions/{definition}"}
        self.validator = Draft7Validator(schema)

        logger.debug(
            "schema_validator_initialized",
            schema_path=str(schema_path),
            definition=definition,
        )

    def _load_schema(self) -> dict[str, Any]:
        """Load JSON schema from file"""
        if not self.schema_path.exists():
            raise FileNotFoundError(f"Schema not found: {self.schema_path}")

        with open(self.schema_path, "r", encoding="utf-8") as f:
            return json.load(f)

    def errors(self, document: Any) -> list[str]:
        """All schema violations, ordered by document path"""
        found = sorted(self.validator.iter_errors(document), key=lambda e: list(map(str, e.path)))
        return [self._format_schema_error(error) for error in found]

    def _format_schema_error(self, error: JSONSchemaValidationError) -> str:
        """Format JSON schema error for readability"""
        path = ".".join(str(p) for p in error.path) if error.path else "root"
        return f"{path}: {error.message}"


@lru_cache(maxsize=None)
def get_validator(schema_path: Path, definition: str | None = None) -> SchemaValidator:
    """Cached validator per (schema file, definition)"""
    return SchemaValidator(schema_path, definition)
