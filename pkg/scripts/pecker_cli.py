"""
Command-line entry point.

Usage:
    pecker pdg design.v > design.dot
    pecker trace design.v --stimulus stim.json --out run.jsonl
    pecker empc design.v --stimulus stim.json
    pecker localize design.v --stimulus stim.json --top 5 --report report.json
    pecker bench --corpus corpus/corpus.json --modes pecker,tarantula,ochiai --out report.json
    pecker seed --design design.v --stimulus stim.json --limit 5
    pecker seed --corpus corpus/corpus.json --out-dir build/buggy
"""

import argparse
import json
import sys
from pathlib import Path

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from config.analysis_rules import LOCALIZATION_MODES, MUTATION_OPERATORS, TRUNCATION_LEVELS
from config.settings import settings
from src.analysis.empc import compute_empc
from src.bench.manifest import load_manifest
from src.bench.runner import run_corpus
from src.bench.seeding import materialize_corpus, seed_mutants
from src.design import Design, load_design
from src.errors import ManifestValidationError, NoFailure, PeckerError
from src.localization.localizer import localize_runs
from src.localization.modes import LocalizationMode
from src.localization.pruning import TruncationLevel
from src.localization.ranking import RankedList
from src.orchestration.graph import localize
from src.pdg.dot_export import export_dot
from src.simulation.simulator import complete_golden_outputs, simulate
from src.simulation.stimulus import load_stimulus
from src.traces.jsonl_io import dumps_trace, load_trace
from src.traces.model import TestRun
from src.utils.logger import get_logger

logger = get_logger(__name__)


def banner(title: str) -> None:
    print(f"\n{'=' * 60}")
    print(title)
    print(f"{'=' * 60}")


def write_or_print(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")
        print(f"Wrote {out}", file=sys.stderr)


def _runs(design: Design, stimulus: str, reference: str | None = None) -> list[TestRun]:
    tests = load_stimulus(stimulus, design.ast)
    if reference is not None:
        ref = load_design(reference)
        tests = [t if t.has_golden else complete_golden_outputs(t, ref) for t in tests]
    return [simulate(design, t) for t in tests]


def _trace_run(path: str) -> TestRun:
    trace, results = load_trace(path)
    return TestRun(Path(path).stem, trace, results)


# ============================================================================
# Subcommands
# ============================================================================

def cmd_pdg(args: argparse.Namespace) -> int:
    design = load_design(args.design)
    write_or_print(export_dot(design.pdg, design.name), args.out)
    return 0


def cmd_trace(args: argparse.Namespace) -> int:
    design = load_design(args.design)
    runs = _runs(design, args.stimulus, args.reference)

    if len(runs) == 1:
        run = runs[0]
        write_or_print(dumps_trace(run.trace, run.results), args.out)
        return 0

    stem = Path(args.out or args.stimulus).with_suffix("")
    for run in runs:
        path = stem.parent / f"{stem.name}.{run.name}.jsonl"
        path.write_text(dumps_trace(run.trace, run.results), encoding="utf-8")
        print(f"Wrote {path}", file=sys.stderr)
    return 0


def cmd_empc(args: argparse.Namespace) -> int:
    design = load_design(args.design)
    if args.trace:
        run = _trace_run(args.trace)
    else:
        run = next((r for r in _runs(design, args.stimulus, args.reference) if r.failed), None)
        if run is None:
            raise NoFailure("stimulus never fails: nothing to analyze")

    fixpoint = args.empc_fixpoint or settings.empc_fixpoint
    empc = compute_empc(design.pdg, run.trace, run.results, fixpoint=fixpoint)
    write_or_print(empc.to_csv(), args.out)
    return 0


def _resolve_mode(args: argparse.Namespace) -> str:
    if args.no_activation_localization:
        return LocalizationMode.PECKER_NO_AL.value
    if args.no_pruning:
        return LocalizationMode.PECKER_NO_NTP.value
    return args.mode or settings.default_mode


def print_ranking(ranked: RankedList, top: int) -> None:
    banner(
        f"RANKED STATEMENTS (mode={ranked.mode}, truncation={ranked.truncation}, "
        f"first fail at cycle {ranked.first_fail_cycle})"
    )
    for entry in ranked.top(top):
        ev = entry.evidence
        if ev.baseline is not None:
            score = f"score={ev.baseline:.4f}"
        elif entry.candidate and ev.score is not None:
            score = f"aef={ev.score.aef} aep={ev.score.aep}"
        else:
            score = f"fallback={ev.fallback:.4f}"
        where = ev.exclusion.value if ev.exclusion else f"c_act={ev.c_act}"
        extra = "" if ev.baseline is not None else f"  {where}  empc={ev.empc}"
        print(f"{entry.rank:>3}. s{ev.stmt_id:<4} {ev.location:<28} {ev.kind:<7} {score}{extra}")
    print(f"{'=' * 60}\n")


def cmd_localize(args: argparse.Namespace) -> int:
    mode = _resolve_mode(args)
    truncation = args.truncation or settings.default_truncation
    fixpoint = args.empc_fixpoint or settings.empc_fixpoint

    if args.trace:
        design = load_design(args.design)
        runs = [_trace_run(path) for path in args.trace]
        ranked = localize_runs(
            design, runs, LocalizationMode(mode), TruncationLevel(truncation), fixpoint
        )
    else:
        reference = load_design(args.reference) if args.reference else None
        ranked = localize(
            Path(args.design),
            Path(args.stimulus),
            mode=mode,
            truncation=truncation,
            empc_fixpoint=fixpoint,
            reference=reference,
        )

    print_ranking(ranked, args.top or settings.default_top_k)
    if args.report:
        Path(args.report).write_text(ranked.dumps(), encoding="utf-8")
        print(f"Report written to {args.report}", file=sys.stderr)
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    modes = args.modes.split(",") if args.modes else list(settings.bench_modes)
    unknown = [m for m in modes if m not in LOCALIZATION_MODES]
    if unknown:
        print(f"Unknown modes: {unknown}", file=sys.stderr)
        return 2

    levels = args.truncation_levels.split(",") if args.truncation_levels else TRUNCATION_LEVELS
    try:
        manifest = load_manifest(args.corpus)
        report = run_corpus(
            manifest,
            modes,
            truncation_levels=levels,
            max_workers=args.workers,
            empc_fixpoint=args.empc_fixpoint or settings.empc_fixpoint,
            show_progress=not args.quiet,
        )
    except ManifestValidationError as e:
        print(f"\n❌ {e}", file=sys.stderr)
        for error in e.errors:
            print(f"   - {error}", file=sys.stderr)
        return 2

    print(report.format_tables())
    out = report.save(args.out)
    print(f"Report written to {out}", file=sys.stderr)
    return 0


def cmd_seed(args: argparse.Namespace) -> int:
    if args.corpus:
        try:
            manifest = load_manifest(args.corpus)
        except ManifestValidationError as e:
            for error in e.errors:
                print(f"   - {error}", file=sys.stderr)
            return 2
        written = materialize_corpus(manifest, args.out_dir)
        banner(f"MATERIALIZED {len(written)} BUGGY DESIGN(S)")
        for bug_id, path in written.items():
            print(f"{bug_id:<24} {path}")
        return 0

    if not (args.design and args.stimulus):
        print("seed needs --corpus, or --design with --stimulus", file=sys.stderr)
        return 2

    design = load_design(args.design)
    tests = load_stimulus(args.stimulus, design.ast)
    operators = args.operators.split(",") if args.operators else MUTATION_OPERATORS
    mutants = seed_mutants(design, tests, operators, args.limit)

    stem = Path(args.design).stem
    entries = [
        m.to_entry(f"{stem}_{i}", args.category, args.design, args.stimulus)
        for i, m in enumerate(mutants)
    ]
    write_or_print(json.dumps({"entries": entries}, indent=2) + "\n", args.out)
    return 0


# ============================================================================
# Argument parsing
# ============================================================================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pecker",
        description="Bug localization for sequential Verilog designs",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pdg", help="Print the dependency graph as DOT")
    p.add_argument("design", help="Verilog design file")
    p.add_argument("--out", help="Write to a file instead of stdout")
    p.set_defaults(func=cmd_pdg)

    p = sub.add_parser("trace", help="Simulate and write JSONL traces")
    p.add_argument("design")
    p.add_argument("--stimulus", required=True)
    p.add_argument("--reference", help="Reference design for golden outputs")
    p.add_argument("--out", help="Output file (multi-test stimuli get one file per test)")
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("empc", help="Print per-statement EMPC as CSV")
    p.add_argument("design")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--stimulus")
    source.add_argument("--trace", help="JSONL trace of a failing run")
    p.add_argument("--reference")
    p.add_argument("--empc-fixpoint", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_empc)

    p = sub.add_parser("localize", help="Rank suspicious statements")
    p.add_argument("design")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--stimulus")
    source.add_argument("--trace", nargs="+", help="JSONL traces, one per test")
    p.add_argument("--reference")
    p.add_argument("--mode", choices=LOCALIZATION_MODES)
    ablation = p.add_mutually_exclusive_group()
    ablation.add_argument("--no-activation-localization", action="store_true")
    ablation.add_argument("--no-pruning", action="store_true")
    p.add_argument("--truncation", choices=TRUNCATION_LEVELS)
    p.add_argument("--empc-fixpoint", action="store_true")
    p.add_argument("--top", type=int)
    p.add_argument("--report", help="Write the ranked list as JSON")
    p.set_defaults(func=cmd_localize)

    p = sub.add_parser("bench", help="Run the seeded-bug corpus")
    p.add_argument("--corpus", required=True)
    p.add_argument("--modes", help="Comma-separated modes")
    p.add_argument("--truncation-levels", help="Comma-separated truncation levels")
    p.add_argument("--workers", type=int)
    p.add_argument("--empc-fixpoint", action="store_true")
    p.add_argument("--out", help="JSON report path (default: <report_dir>/<corpus name>.json)")
    p.add_argument("--quiet", action="store_true", help="No progress bar")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("seed", help="Seed mutants or materialize corpus bugs")
    p.add_argument("--corpus", help="Manifest whose mutation entries are written to disk")
    p.add_argument("--out-dir", default="build/buggy")
    p.add_argument("--design")
    p.add_argument("--stimulus")
    p.add_argument("--operators", help=f"Comma-separated subset of {MUTATION_OPERATORS}")
    p.add_argument("--category", default="easy", choices=["easy", "medium"])
    p.add_argument("--limit", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_seed)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PeckerError as e:
        logger.debug("command_failed", command=args.command, error_type=type(e).__name__)
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
