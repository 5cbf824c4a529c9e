"""
Centralized configuration management using Pydantic settings.
Loads from environment variables (prefix PECKER_) with validation.
"""

from pathlib import Path
from typing import Literal

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from config.analysis_rules import LOCALIZATION_MODES, TRUNCATION_LEVELS


class Settings(BaseSettings):
    """Application settings with validation and type safety"""

    model_config = SettingsConfigDict(
        env_prefix="PECKER_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # ============================================================================
    # Localization Defaults
    # ============================================================================
    default_mode: str = Field(
        default="pecker",
        description="Ranking mode used when none is given on the command line",
    )
    default_truncation: str = Field(
        default="full",
        description="Trace truncation level for pecker modes (full|half|none)",
    )
    empc_fixpoint: bool = Field(
        default=False,
        description="Repeat EMPC sweeps until no value changes",
    )
    default_top_k: int = Field(
        default=10,
        gt=0,
        le=1000,
        description="Number of ranked statements printed by the CLI",
    )

    # ============================================================================
    # Benchmark Configuration
    # ============================================================================
    bench_max_workers: int = Field(
        default=1,
        gt=0,
        le=64,
        description="Worker threads used by the corpus runner",
    )
    bench_modes: list[str] = Field(
        default_factory=lambda: list(LOCALIZATION_MODES),
        description="Modes evaluated by `pecker bench`",
    )

    @field_validator("bench_modes", mode="after")
    @classmethod
    def validate_bench_modes(cls, v: list[str]) -> list[str]:
        """Reject unknown mode names early"""
        unknown = [mode for mode in v if mode not in LOCALIZATION_MODES]
        if unknown:
            raise ValueError(f"Unknown bench modes: {unknown}")
        return v

    # ============================================================================
    # Paths
    # ============================================================================
    config_dir: Path = Field(
        default=Path(__file__).resolve().parent,
        description="Directory containing the JSON schemas",
    )
    report_dir: Path = Field(
        default=Path("./reports"),
        description="Default directory for benchmark reports",
    )

    # ============================================================================
    # Logging
    # ============================================================================
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"] = Field(
        default="INFO",
        description="Logging level",
    )
    log_format: Literal["json", "console"] = Field(
        default="json",
        description="Log output format",
    )

    # ============================================================================
    # Computed Properties
    # ============================================================================

    @property
    def stimulus_schema_path(self) -> Path:
        """JSON schema for stimulus files"""
        return self.config_dir / "stimulus_schema.json"

    @property
    def trace_schema_path(self) -> Path:
        """JSON schema for trace JSONL lines"""
        return self.config_dir / "trace_schema.json"

    @property
    def corpus_schema_path(self) -> Path:
        """JSON schema for corpus manifests"""
        return self.config_dir / "corpus_schema.json"

    def validate_settings(self) -> None:
        """Runtime validation of interdependent settings"""
        if self.default_mode not in LOCALIZATION_MODES:
            raise ValueError(
                f"default_mode ({self.default_mode}) must be one of "
                f"{LOCALIZATION_MODES}"
            )

        if self.default_truncation not in TRUNCATION_LEVELS:
            raise ValueError(
                f"default_truncation ({self.default_truncation}) must be one of "
                f"{TRUNCATION_LEVELS}"
            )

        if not self.config_dir.exists():
            raise FileNotFoundError(
                f"Config directory not found: {self.config_dir}"
            )


# ============================================================================
# Global Settings Instance
# ============================================================================

# Singleton instance
_settings: Settings | None = None


def get_settings() -> Settings:
    """Get or create settings instance"""
    global _settings
    if _settings is None:
        _settings = Settings()
        _settings.validate_settings()
    return _settings


# Convenience function for direct import
settings = get_settings()
