"""
LangGraph state schema for the localization pipeline.
Defines the state that flows through the localization graph.
"""

from pathlib import Path
from typing import Any, TypedDict

from typing_extensions import NotRequired

from src.design import Design
from src.frontend.ast_nodes import DesignAst
from src.frontend.statements import StatementTable
from src.localization.localizer import FailureAnalysis
from src.localization.ranking import RankedList
from src.pdg.classifier import SignalClassMap
from src.simulation.stimulus import Stimulus
from src.traces.model import TestRun

StimulusInput = list[Stimulus] | dict[str, Any] | Path


class LocalizationState(TypedDict):
    """
    State that flows through the localization pipeline.

    A caller supplies either `source` (with `filename`) or a prebuilt
    `design`; in the latter case the static stages are skipped.
    """

    # ========================================================================
    # Input (Set at start)
    # ========================================================================

    filename: str
    """Design file name used in locations and messages"""

    source: NotRequired[str]
    """Verilog source text"""

    stimulus: StimulusInput
    """Parsed tests, a decoded stimulus document, or a stimulus file"""

    mode: str
    """Ranking mode"""

    truncation: str
    """Trace truncation level (pecker modes)"""

    empc_fixpoint: bool
    """Repeat EMPC sweeps until stable"""

    reference: NotRequired[Design]
    """Bug-free design used to derive golden outputs, if the stimulus lacks them"""

    # ========================================================================
    # Static stages
    # ========================================================================

    ast: NotRequired[DesignAst]
    statements: NotRequired[StatementTable]
    classes: NotRequired[SignalClassMap]

    design: NotRequired[Design]
    """Design bundle, complete after build_pdg"""

    # ========================================================================
    # Dynamic stages
    # ========================================================================

    runs: NotRequired[list[TestRun]]
    """One simulated run per test, in stimulus order"""

    analyses: NotRequired[list[FailureAnalysis]]
    """EMPC and activation of every failing run"""

    ranked: NotRequired[RankedList]
    """Final ranked list"""

    # ========================================================================
    # Status and Errors
    # ========================================================================

    status: str
    """
    Current pipeline status:
    - pending: Not started
    - parsing, classifying, building_pdg, simulating, analyzing, ranking
    - completed: Successfully completed
    - failed: Pipeline failed
    """

    error: NotRequired[str]
    """Error message if status is 'failed'"""

    error_stage: NotRequired[str]
    """Which stage failed"""

    exception: NotRequired[BaseException]
    """Original exception, re-raised by `localize`"""

    processing_time: NotRequired[float]
    """Total processing time in seconds"""


# ========================================================================
# Helper Functions
# ========================================================================

def create_initial_state(
    stimulus: StimulusInput,
    mode: str,
    truncation: str,
    empc_fixpoint: bool = False,
    source: str | None = None,
    filename: str = "<input>",
    design: Design | None = None,
    reference: Design | None = None,
) -> LocalizationState:
    """
    Create the initial pipeline state.

    Args:
        stimulus: Tests to simulate
        mode: Ranking mode
        truncation: Truncation level
        empc_fixpoint: Repeat EMPC sweeps until stable
        source: Verilog source (when no design is given)
        filename: Name of the source
        design: Prebuilt design bundle
        reference: Reference design for golden outputs

    Returns:
        Initial LocalizationState

    Raises:
        ValueError: Neither source nor design given
    """
    if source is None and design is None:
        raise ValueError("either source or design is required")

    state: LocalizationState = {
        "filename": design.filename if design is not None else filename,
        "stimulus": stimulus,
        "mode": mode,
        "truncation": truncation,
        "empc_fixpoint": empc_fixpoint,
        "status": "pending",
    }
    if source is not None:
        state["source"] = source
    if design is not None:
        state["design"] = design
        state["source"] = design.source
    if reference is not None:
        state["reference"] = reference
    return state


def get_state_summary(state: LocalizationState) -> dict[str, Any]:
    """
    Get a summary of the current state for logging/debugging.

    Args:
        state: Current graph state

    Returns:
        Summary dictionary
    """
    summary: dict[str, Any] = {
        "filename": state["filename"],
        "status": state["status"],
        "mode": state["mode"],
    }

    if "design" in state:
        summary["statements"] = len(state["design"].statements)

    if "runs" in state:
        summary["tests"] = len(state["runs"])
        summary["failing_tests"] = sum(r.failed for r in state["runs"])

    if "ranked" in state:
        summary["top"] = state["ranked"].order[:3]

    if "error" in state:
        summary["error"] = state["error"]
        summary["error_stage"] = state.get("error_stage")

    return summary


def mark_as_failed(
    state: LocalizationState,
    error: BaseException,
    stage: str,
) -> LocalizationState:
    """
    Mark state as failed with error information.

    Args:
        state: Current state
        error: Exception raised by the stage
        stage: Stage where failure occurred

    Returns:
        Updated state
    """
    state["status"] = "failed"
    state["error"] = str(error)
    state["error_stage"] = stage
    state["exception"] = error
    return state
