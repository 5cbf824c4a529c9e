"""
LangGraph state machine for the localization pipeline.
Orchestrates the whole `localize` workflow.
"""

import time
from collections.abc import Sequence
from pathlib import Path
from typing import Any

from langgraph.graph import END, START, StateGraph

from config.settings import settings
from src.design import Design
from src.localization.ranking import RankedList
from src.orchestration.nodes import (
    analyze_node,
    build_pdg_node,
    classify_node,
    handle_error_node,
    parse_node,
    rank_node,
    route_after,
    route_start,
    simulate_node,
)
from src.orchestration.state import (
    LocalizationState,
    StimulusInput,
    create_initial_state,
    get_state_summary,
)
from src.simulation.stimulus import Stimulus
from src.utils.logger import LogContext, get_logger

logger = get_logger(__name__)

STAGES: tuple[str, ...] = ("parse", "classify", "build_pdg", "simulate", "analyze", "rank")


class LocalizationPipeline:
    """
    LangGraph-based pipeline for bug localization.

    Pipeline stages:
    1. Parse - Tokenize, parse, enumerate statements
    2. Classify - Signal classes and driver checks
    3. Build PDG - Dependency graph and Design bundle
    4. Simulate - One run per test
    5. Analyze - EMPC and activation cycles per failing run
    6. Rank - Dual scores (or baseline formula) and ordering
    """

    def __init__(self) -> None:
        self.graph = self._build_graph()
        logger.debug("localization_pipeline_initialized")

    def _build_graph(self) -> Any:
        """
        Build the LangGraph state machine.

        Graph structure:
        START → [design given?] → parse → classify → build_pdg → simulate → analyze → rank → END
                        └──────────────────────────────────↑
        any stage (if failed) → handle_error → END
        """
        workflow = StateGraph(LocalizationState)

        workflow.add_node("parse", parse_node)
        workflow.add_node("classify", classify_node)
        workflow.add_node("build_pdg", build_pdg_node)
        workflow.add_node("simulate", simulate_node)
        workflow.add_node("analyze", analyze_node)
        workflow.add_node("rank", rank_node)
        workflow.add_node("handle_error", handle_error_node)

        workflow.add_conditional_edges(
            START,
            route_start,
            {"parse": "parse", "simulate": "simulate"},
        )

        for stage, following in zip(STAGES, STAGES[1:] + (END,)):
            workflow.add_conditional_edges(
                stage,
                route_after,
                {"continue": following, "failed": "handle_error"},
            )

        workflow.add_edge("handle_error", END)

        return workflow.compile()

    def run(self, initial_state: LocalizationState) -> LocalizationState:
        """
        Run the pipeline.

        Args:
            initial_state: State built by create_initial_state

        Returns:
            Final LocalizationState (status completed or failed)
        """
        with LogContext(design=initial_state["filename"], mode=initial_state["mode"]):
            logger.debug("pipeline_started")
            start_time = time.time()

            final_state: LocalizationState = self.graph.invoke(initial_state)
            final_state["processing_time"] = time.time() - start_time

            logger.debug(
                "pipeline_completed",
                processing_time=f"{final_state['processing_time']:.3f}s",
                summary=get_state_summary(final_state),
            )
            return final_state


# ============================================================================
# Global pipeline instance
# ============================================================================

_pipeline: LocalizationPipeline | None = None


def get_pipeline() -> LocalizationPipeline:
    """
    Get or create the global pipeline instance.

    Returns:
        Singleton LocalizationPipeline instance
    """
    global _pipeline
    if _pipeline is None:
        _pipeline = LocalizationPipeline()
    return _pipeline


def localize(
    design: Design | str | Path,
    stimulus: Sequence[Stimulus] | dict[str, Any] | str | Path,
    mode: str | None = None,
    truncation: str | None = None,
    empc_fixpoint: bool | None = None,
    reference: Design | None = None,
) -> RankedList:
    """
    Run the whole pipeline and return the ranked list.

    Args:
        design: Design bundle or path to a `.v` file
        stimulus: Parsed tests, a decoded stimulus document, or a stimulus file
        mode: Ranking mode (default from settings)
        truncation: Truncation level (default from settings)
        empc_fixpoint: Repeat EMPC sweeps (default from settings)
        reference: Bug-free design for golden outputs

    Returns:
        RankedList

    Raises:
        PeckerError: The exception raised by the failing stage
    """
    stim: StimulusInput
    if isinstance(stimulus, (str, Path)):
        stim = Path(stimulus)
    elif isinstance(stimulus, dict):
        stim = stimulus
    else:
        stim = list(stimulus)

    options = {
        "mode": mode or settings.default_mode,
        "truncation": truncation or settings.default_truncation,
        "empc_fixpoint": settings.empc_fixpoint if empc_fixpoint is None else empc_fixpoint,
        "reference": reference,
    }
    if isinstance(design, Design):
        state = create_initial_state(stim, design=design, **options)
    else:
        path = Path(design)
        state = create_initial_state(
            stim, source=path.read_text(encoding="utf-8"), filename=str(path), **options
        )

    final_state = get_pipeline().run(state)
    if final_state["status"] == "failed":
        raise final_state["exception"]
    return final_state["ranked"]
