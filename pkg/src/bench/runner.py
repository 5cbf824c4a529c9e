"""
Corpus runner: validate every bug, then localize each one under every mode.
"""

from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from tqdm import tqdm

from config.analysis_rules import LOCALIZATION_MODES, TRUNCATION_LEVELS
from config.settings import settings
from src.bench.manifest import CorpusEntry, CorpusManifest
from src.bench.report import BenchReport, BugResult
from src.bench.seeding import true_activation_cycle, with_golden
from src.design import Design, parse_source
from src.errors import EmptyCorpus, ManifestValidationError, PeckerError
from src.localization.modes import LocalizationMode
from src.orchestration.graph import get_pipeline, localize
from src.simulation.simulator import simulate
from src.simulation.stimulus import Stimulus, load_stimulus
from src.utils.logger import LogContext, get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class PreparedBug:
    """A validated corpus entry ready to localize"""

    entry: CorpusEntry
    reference: Design
    buggy: Design
    tests: list[Stimulus]
    first_fail_cycle: int
    true_activation_cycle: int | None


def _differing_lines(reference: str, buggy: str) -> list[int] | None:
    ref_lines = reference.splitlines()
    bug_lines = buggy.splitlines()
    if len(ref_lines) != len(bug_lines):
        return None
    return [i + 1 for i, (a, b) in enumerate(zip(ref_lines, bug_lines)) if a != b]


def prepare_entry(entry: CorpusEntry) -> PreparedBug:
    """
    Check one entry and build its designs and golden stimulus.

    Args:
        entry: Corpus entry

    Returns:
        PreparedBug

    Raises:
        ManifestValidationError: The entry is not a genuine detected single-line bug
    """

    def invalid(message: str) -> ManifestValidationError:
        return ManifestValidationError([f"{entry.id}: {message}"])

    try:
        reference = parse_source(entry.reference_source(), str(entry.design))
        buggy = parse_source(entry.buggy_source(), entry.buggy_filename)
    except (PeckerError, ValueError) as e:
        raise invalid(str(e)) from e

    changed = _differing_lines(reference.source, buggy.source)
    if changed != [entry.ground_truth_line]:
        raise invalid(
            f"buggy and reference designs must differ exactly on line "
            f"{entry.ground_truth_line} (differ on {changed})"
        )
    if not buggy.statements.at_line(entry.ground_truth_line):
        raise invalid(f"no statement starts on line {entry.ground_truth_line}")

    try:
        tests = with_golden(load_stimulus(entry.stimulus, reference.ast), reference)
        reference_fails = any(simulate(reference, t).failed for t in tests)
        runs = [simulate(buggy, t) for t in tests]
    except PeckerError as e:
        raise invalid(str(e)) from e

    if reference_fails:
        raise invalid("stimulus fails on the reference design")
    failing = next(((t, r) for t, r in zip(tests, runs) if r.failed), None)
    if failing is None:
        raise invalid("stimulus does not detect the bug")
    test, run = failing
    assert run.first_fail_cycle is not None

    truth = entry.true_activation_cycle
    if truth is None:
        truth = true_activation_cycle(reference, buggy, test, entry.ground_truth_line)

    return PreparedBug(entry, reference, buggy, tests, run.first_fail_cycle, truth)


def validate_corpus(manifest: CorpusManifest) -> list[PreparedBug]:
    """
    Validate every entry before any localization runs.

    Raises:
        EmptyCorpus: The manifest has no entries
        ManifestValidationError: All collected entry errors
    """
    if len(manifest) == 0:
        raise EmptyCorpus(f"corpus {manifest.name} has no entries")

    prepared: list[PreparedBug] = []
    errors: list[str] = []
    for entry in manifest:
        try:
            prepared.append(prepare_entry(entry))
        except ManifestValidationError as e:
            errors.extend(e.errors)

    if errors:
        logger.error("corpus_validation_failed", corpus=manifest.name, errors=errors[:5])
        raise ManifestValidationError(errors)
    return prepared


def run_bug(
    bug: PreparedBug,
    modes: Sequence[str],
    truncation_levels: Sequence[str] = (),
    empc_fixpoint: bool = False,
) -> BugResult:
    """
    Localize one prepared bug under every mode and truncation level.

    Failures are recorded in the result rather than raised.
    """
    entry = bug.entry
    line = entry.ground_truth_line

    def best_rank(mode: str, truncation: str) -> tuple[int, int | None]:
        ranked = localize(
            bug.buggy,
            bug.tests,
            mode=mode,
            truncation=truncation,
            empc_fixpoint=empc_fixpoint,
        )
        rank = ranked.best_rank_on_line(line)
        assert rank is not None
        return rank, ranked[rank - 1].evidence.c_act

    with LogContext(bug_id=entry.id):
        try:
            ranks: dict[str, int] = {}
            estimated: int | None = None
            for mode in modes:
                ranks[mode], c_act = best_rank(mode, "full")
                if mode == LocalizationMode.PECKER.value:
                    estimated = c_act

            truncation_ranks = {
                level: best_rank(LocalizationMode.PECKER.value, level)[0]
                for level in truncation_levels
            }
            if estimated is None:
                estimated = best_rank(LocalizationMode.PECKER.value, "full")[1]
        except PeckerError as e:
            logger.warning("corpus_entry_failed", error=str(e), error_type=type(e).__name__)
            return BugResult(
                id=entry.id,
                category=entry.category,
                ground_truth_line=line,
                operator=entry.operator,
                error=str(e),
            )

    return BugResult(
        id=entry.id,
        category=entry.category,
        ground_truth_line=line,
        first_fail_cycle=bug.first_fail_cycle,
        true_activation_cycle=bug.true_activation_cycle,
        estimated_c_act=estimated,
        operator=entry.operator,
        ranks=ranks,
        truncation_ranks=truncation_ranks,
    )


def run_corpus(
    manifest: CorpusManifest,
    modes: Sequence[str] | None = None,
    truncation_levels: Sequence[str] = tuple(TRUNCATION_LEVELS),
    max_workers: int | None = None,
    empc_fixpoint: bool = False,
    show_progress: bool = False,
) -> BenchReport:
    """
    Localize every corpus bug under every mode.

    Args:
        manifest: Loaded corpus manifest
        modes: Modes to evaluate (default from settings)
        truncation_levels: Levels for the truncation study (pecker mode)
        max_workers: Worker threads (default from settings)
        empc_fixpoint: Repeat EMPC sweeps until stable
        show_progress: Show a progress bar

    Returns:
        BenchReport, bugs in manifest order

    Raises:
        EmptyCorpus: No entries
        ManifestValidationError: Some entry is not a genuine detected bug
    """
    modes = list(modes or settings.bench_modes)
    unknown = [m for m in modes if m not in LOCALIZATION_MODES]
    if unknown:
        raise ValueError(f"unknown modes: {unknown}")
    workers = max_workers or settings.bench_max_workers

    prepared = validate_corpus(manifest)
    logger.info(
        "corpus_run_started",
        corpus=manifest.name,
        bugs=len(prepared),
        modes=modes,
        workers=workers,
    )

    def work(bug: PreparedBug) -> BugResult:
        return run_bug(bug, modes, truncation_levels, empc_fixpoint)

    progress = dict(total=len(prepared), desc="Localizing", disable=not show_progress)
    if workers > 1:
        # compile the shared graph before threads race for it
        get_pipeline()
        with ThreadPoolExecutor(max_workers=workers) as executor:
            results = list(tqdm(executor.map(work, prepared), **progress))
    else:
        results = [work(bug) for bug in tqdm(prepared, **progress)]

    report = BenchReport(manifest.name, modes, list(truncation_levels), results)
    logger.info(
        "corpus_run_completed",
        corpus=manifest.name,
        bugs=len(results),
        failures=len(report.failures),
    )
    return report
