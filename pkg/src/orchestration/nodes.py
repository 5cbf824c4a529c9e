"""
LangGraph node functions for the localization pipeline.
Each function represents one stage of the workflow.
"""

from src.design import Design
from src.frontend.lexer import tokenize
from src.frontend.parser import parse_design
from src.frontend.statements import enumerate_statements
from src.localization.localizer import analyze_failures, rank_runs
from src.localization.modes import LocalizationMode
from src.localization.pruning import TruncationLevel
from src.orchestration.state import LocalizationState, mark_as_failed
from src.pdg.classifier import classify_signals
from src.pdg.graph import build_pdg
from src.simulation.simulator import complete_golden_outputs, simulate
from src.simulation.stimulus import Stimulus, load_stimulus, parse_stimulus
from src.utils.logger import LogContext, get_logger

logger = get_logger(__name__)


# ============================================================================
# Node: Parse
# ============================================================================

def parse_node(state: LocalizationState) -> LocalizationState:
    """
    Tokenize and parse the source, then enumerate statements.

    Updates state with:
    - ast: Parsed module
    - statements: Statement table
    """
    with LogContext(design=state["filename"]):
        state["status"] = "parsing"
        try:
            ast = parse_design(tokenize(state["source"], state["filename"]), state["filename"])
            state["ast"] = ast
            state["statements"] = enumerate_statements(ast)
            state["status"] = "classifying"
            return state
        except Exception as e:
            logger.error("node_parse_failed", error=str(e), error_type=type(e).__name__)
            return mark_as_failed(state, e, "parse")


# ============================================================================
# Node: Classify Signals
# ============================================================================

def classify_node(state: LocalizationState) -> LocalizationState:
    """
    Classify every signal and check driver rules.

    Updates state with:
    - classes: SignalClassMap
    """
    with LogContext(design=state["filename"]):
        try:
            state["classes"] = classify_signals(state["ast"])
            state["status"] = "building_pdg"
            return state
        except Exception as e:
            logger.error("node_classify_failed", error=str(e), error_type=type(e).__name__)
            return mark_as_failed(state, e, "classify")


# ============================================================================
# Node: Build PDG
# ============================================================================

def build_pdg_node(state: LocalizationState) -> LocalizationState:
    """
    Build the dependency graph and assemble the Design bundle.

    Updates state with:
    - design: Design
    """
    with LogContext(design=state["filename"]):
        try:
            pdg = build_pdg(state["ast"], state["classes"], state["statements"])
            state["design"] = Design(
                state["filename"],
                state["source"],
                state["ast"],
                state["statements"],
                state["classes"],
                pdg,
            )
            state["status"] = "simulating"
            return state
        except Exception as e:
            logger.error("node_build_pdg_failed", error=str(e), error_type=type(e).__name__)
            return mark_as_failed(state, e, "build_pdg")


# ============================================================================
# Node: Simulate
# ============================================================================

def _resolve_tests(state: LocalizationState) -> list[Stimulus]:
    design = state["design"]
    stimulus = state["stimulus"]
    if isinstance(stimulus, list):
        tests = stimulus
    elif isinstance(stimulus, dict):
        tests = parse_stimulus(stimulus, design.ast)
    else:
        tests = load_stimulus(stimulus, design.ast)

    reference = state.get("reference")
    if reference is not None:
        tests = [t if t.has_golden else complete_golden_outputs(t, reference) for t in tests]
    return tests


def simulate_node(state: LocalizationState) -> LocalizationState:
    """
    Simulate every test from a freshly elaborated state.

    Updates state with:
    - runs: One TestRun per test
    """
    with LogContext(design=state["filename"]):
        try:
            design = state["design"]
            runs = [simulate(design, test) for test in _resolve_tests(state)]
            state["runs"] = runs

            logger.info(
                "node_simulate_completed",
                tests=len(runs),
                failing_tests=sum(r.failed for r in runs),
                cycles=sum(len(r.trace) for r in runs),
            )
            state["status"] = "analyzing"
            return state
        except Exception as e:
            logger.error("node_simulate_failed", error=str(e), error_type=type(e).__name__)
            return mark_as_failed(state, e, "simulate")


# ============================================================================
# Node: Analyze (EMPC + activation)
# ============================================================================

def analyze_node(state: LocalizationState) -> LocalizationState:
    """
    Compute EMPC and activation cycles of every failing run.
    Baseline modes skip the analysis.

    Updates state with:
    - analyses: FailureAnalysis per failing run
    """
    with LogContext(design=state["filename"], mode=state["mode"]):
        try:
            mode = LocalizationMode(state["mode"])
            if mode.is_baseline:
                state["analyses"] = []
            else:
                state["analyses"] = analyze_failures(
                    state["design"], state["runs"], mode, state["empc_fixpoint"]
                )
            state["status"] = "ranking"
            return state
        except Exception as e:
            logger.error("node_analyze_failed", error=str(e), error_type=type(e).__name__)
            return mark_as_failed(state, e, "analyze")


# ============================================================================
# Node: Rank
# ============================================================================

def rank_node(state: LocalizationState) -> LocalizationState:
    """
    Score and rank statements.

    Updates state with:
    - ranked: RankedList
    """
    with LogContext(design=state["filename"], mode=state["mode"]):
        try:
            state["ranked"] = rank_runs(
                state["design"],
                state["runs"],
                state["analyses"],
                LocalizationMode(state["mode"]),
                TruncationLevel(state["truncation"]),
            )
            state["status"] = "completed"
            return state
        except Exception as e:
            logger.error("node_rank_failed", error=str(e), error_type=type(e).__name__)
            return mark_as_failed(state, e, "rank")


# ============================================================================
# Node: Handle Errors
# ============================================================================

def handle_error_node(state: LocalizationState) -> LocalizationState:
    """
    Handle errors from previous nodes.

    The failing node has already marked the state; this logs the failure.
    """
    with LogContext(design=state["filename"]):
        logger.warning(
            "pipeline_failed",
            error=state.get("error", "Unknown error"),
            stage=state.get("error_stage", "Unknown stage"),
        )
        return state


# ============================================================================
# Conditional Edge Functions
# ============================================================================

def route_start(state: LocalizationState) -> str:
    """
    Skip the static stages when a design bundle was supplied.

    Returns:
        "simulate" if a design is present, else "parse"
    """
    return "simulate" if "design" in state else "parse"


def route_after(state: LocalizationState) -> str:
    """
    Route to the error handler after a failed stage.

    Returns:
        "failed" or "continue"
    """
    return "failed" if state["status"] == "failed" else "continue"
