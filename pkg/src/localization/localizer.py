"""
Localization over simulated runs: EMPC and activation per failing test, then
dual scores (or a baseline formula) and the final ranking.
"""

from collections.abc import Sequence
from dataclasses import dataclass

from src.analysis.empc import EmpcMap, compute_empc
from src.design import Design
from src.errors import NoFailure, TraceFormatError
from src.localization.activation import ActivationMap, activation_cycle, observation_only
from src.localization.baselines import Formula, baseline_score, combined_counts
from src.localization.modes import LocalizationMode
from src.localization.pruning import TruncationLevel
from src.localization.ranking import RankedList, StatementEvidence, rank_statements
from src.localization.scoring import dual_score
from src.traces.model import TestRun
from src.utils.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class FailureAnalysis:
    """EMPC and activation cycles of one failing test"""

    run: TestRun
    empc: EmpcMap
    activation: ActivationMap


def analyze_failures(
    design: Design,
    runs: Sequence[TestRun],
    mode: LocalizationMode = LocalizationMode.PECKER,
    fixpoint: bool = False,
) -> list[FailureAnalysis]:
    """
    Compute EMPC and activation cycles for every failing run.

    Args:
        design: Design bundle the runs were simulated on
        runs: All simulated tests, in stimulus order
        mode: Ranking mode; pecker-no-al pins every C_act to C_obs
        fixpoint: Repeat EMPC sweeps until stable

    Returns:
        One FailureAnalysis per failing run, in run order

    Raises:
        NoFailure: No run has a failing cycle
    """
    failing = [r for r in runs if r.failed]
    if not failing:
        raise NoFailure("stimulus never fails: nothing to localize")

    analyses: list[FailureAnalysis] = []
    for run in failing:
        c_obs = run.first_fail_cycle
        assert c_obs is not None
        empc = compute_empc(design.pdg, run.trace, run.results, fixpoint=fixpoint)
        if mode.uses_activation:
            activation = activation_cycle(empc, c_obs)
        else:
            activation = observation_only(range(len(design.statements)), c_obs)
        analyses.append(FailureAnalysis(run, empc, activation))
    return analyses


def _first_fail(runs: Sequence[TestRun]) -> int:
    for run in runs:
        if run.failed:
            assert run.first_fail_cycle is not None
            return run.first_fail_cycle
    raise NoFailure("stimulus never fails: nothing to localize")


def rank_runs(
    design: Design,
    runs: Sequence[TestRun],
    analyses: Sequence[FailureAnalysis],
    mode: LocalizationMode = LocalizationMode.PECKER,
    truncation: TruncationLevel = TruncationLevel.FULL,
) -> RankedList:
    """
    Score and rank every statement.

    Args:
        design: Design bundle
        runs: All simulated tests
        analyses: Output of analyze_failures (ignored by baseline modes)
        mode: Ranking mode
        truncation: Truncation level for pecker modes

    Returns:
        RankedList over every statement
    """
    first_fail = _first_fail(runs)
    stmt_count = len(design.statements)
    counts = combined_counts(runs, stmt_count)
    fallback = baseline_score(counts, Formula.OCHIAI)

    if mode.is_baseline:
        scores = baseline_score(counts, mode.formula)
        evidence = [
            StatementEvidence(
                stmt_id=entry.stmt_id,
                kind=entry.kind.value,
                location=design.location(entry.stmt_id),
                line=entry.line,
                depth=entry.depth,
                fallback=fallback[entry.stmt_id],
                baseline=scores[entry.stmt_id],
            )
            for entry in design.statements
        ]
        ranked = rank_statements(evidence, mode.value, "none", first_fail, baseline=True)
    else:
        level = mode.effective_truncation(truncation)
        activations = [a.activation for a in analyses]
        failing = [a.run.trace for a in analyses]
        passing = [r.trace for r in runs if not r.failed]
        first = analyses[0]

        evidence = []
        for entry in design.statements:
            activation = first.activation[entry.stmt_id]
            evidence.append(
                StatementEvidence(
                    stmt_id=entry.stmt_id,
                    kind=entry.kind.value,
                    location=design.location(entry.stmt_id),
                    line=entry.line,
                    depth=entry.depth,
                    fallback=fallback[entry.stmt_id],
                    score=dual_score(entry.stmt_id, activations, failing, passing, level),
                    c_act=activation.c_act,
                    exclusion=activation.exclusion,
                    empc=first.empc.for_statement(entry.stmt_id),
                )
            )
        ranked = rank_statements(evidence, mode.value, level.value, first_fail)

    logger.info(
        "localization_completed",
        module=design.name,
        mode=mode.value,
        statements=len(ranked),
        first_fail_cycle=first_fail,
        top=ranked.order[:3],
    )
    return ranked


def localize_runs(
    design: Design,
    runs: Sequence[TestRun],
    mode: LocalizationMode = LocalizationMode.PECKER,
    truncation: TruncationLevel = TruncationLevel.FULL,
    fixpoint: bool = False,
) -> RankedList:
    """Localize from already simulated (or loaded) runs"""
    for run in runs:
        if run.trace.stmt_count != len(design.statements):
            raise TraceFormatError(
                f"trace {run.name} declares {run.trace.stmt_count} statements "
                f"but the design has {len(design.statements)}",
                line=1,
            )
    analyses = [] if mode.is_baseline else analyze_failures(design, runs, mode, fixpoint)
    return rank_runs(design, runs, analyses, mode, truncation)
