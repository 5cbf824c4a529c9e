"""LangGraph pipeline running localization stage by stage."""

from src.orchestration.graph import LocalizationPipeline, get_pipeline, localize
from src.orchestration.state import LocalizationState, create_initial_state

__all__ = [
    "LocalizationPipeline",
    "LocalizationState",
    "create_initial_state",
    "get_pipeline",
    "localize",
]
