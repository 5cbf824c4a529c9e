"""
Benchmark report: per-bug ranks and per-mode Top-K/MFR tables.
"""

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from config.analysis_rules import PECKER_MODES, TOP_K_LEVELS
from config.settings import settings
from src.bench.metrics import MatchSummary, RankSummary, empc_match_ratio, summarize


@dataclass(frozen=True)
class BugResult:
    """Outcome of localizing one corpus bug under every mode"""

    id: str
    category: str
    ground_truth_line: int
    first_fail_cycle: int | None = None
    true_activation_cycle: int | None = None
    estimated_c_act: int | None = None
    operator: str | None = None
    ranks: dict[str, int] = field(default_factory=dict)
    truncation_ranks: dict[str, int] = field(default_factory=dict)
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "id": self.id,
            "category": self.category,
            "ground_truth_line": self.ground_truth_line,
            "ranks": dict(self.ranks),
        }
        if self.truncation_ranks:
            data["truncation_ranks"] = dict(self.truncation_ranks)
        if self.operator is not None:
            data["operator"] = self.operator
        if self.first_fail_cycle is not None:
            data["first_fail_cycle"] = self.first_fail_cycle
        if self.true_activation_cycle is not None:
            data["true_activation_cycle"] = self.true_activation_cycle
        if self.estimated_c_act is not None:
            data["estimated_c_act"] = self.estimated_c_act
        if self.error is not None:
            data["error"] = self.error
        return data


@dataclass(frozen=True)
class BenchReport:
    corpus: str
    modes: list[str]
    truncation_levels: list[str]
    bugs: list[BugResult]

    @property
    def succeeded(self) -> list[BugResult]:
        return [b for b in self.bugs if b.ok]

    @property
    def failures(self) -> list[BugResult]:
        return [b for b in self.bugs if not b.ok]

    def categories(self) -> list[str]:
        return sorted({b.category for b in self.succeeded})

    def _summaries(self, bugs: list[BugResult]) -> dict[str, RankSummary]:
        if not bugs:
            return {}
        return {mode: summarize([b.ranks[mode] for b in bugs]) for mode in self.modes}

    def _truncation(self, bugs: list[BugResult]) -> dict[str, RankSummary]:
        if not bugs or not self.truncation_levels:
            return {}
        return {
            level: summarize([b.truncation_ranks[level] for b in bugs])
            for level in self.truncation_levels
        }

    def overall(self) -> dict[str, RankSummary]:
        return self._summaries(self.succeeded)

    def by_category(self) -> dict[str, dict[str, RankSummary]]:
        return {
            c: self._summaries([b for b in self.succeeded if b.category == c])
            for c in self.categories()
        }

    def truncation(self) -> dict[str, RankSummary]:
        return self._truncation(self.succeeded)

    def truncation_by_category(self) -> dict[str, dict[str, RankSummary]]:
        return {
            c: self._truncation([b for b in self.succeeded if b.category == c])
            for c in self.categories()
        }

    def empc_match(self) -> MatchSummary:
        return empc_match_ratio(
            (b.id, b.estimated_c_act, b.true_activation_cycle) for b in self.succeeded
        )

    def to_dict(self) -> dict[str, Any]:
        def table(summaries: dict[str, RankSummary]) -> dict[str, Any]:
            return {name: s.to_dict() for name, s in summaries.items()}

        return {
            "corpus": self.corpus,
            "modes": list(self.modes),
            "truncation_levels": list(self.truncation_levels),
            "bugs": [b.to_dict() for b in self.bugs],
            "overall": table(self.overall()),
            "by_category": {c: table(s) for c, s in self.by_category().items()},
            "truncation": table(self.truncation()),
            "truncation_by_category": {
                c: table(s) for c, s in self.truncation_by_category().items()
            },
            "empc_match": self.empc_match().to_dict(),
            "failures": [b.id for b in self.failures],
        }

    def dumps(self) -> str:
        """Canonical JSON: sorted keys, two-space indent"""
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def save(self, path: str | Path | None = None) -> Path:
        """
        Write the canonical JSON report.

        Args:
            path: Target file; defaults to `<report_dir>/<corpus>.json`

        Returns:
            Path written
        """
        out = Path(path) if path is not None else settings.report_dir / f"{self.corpus}.json"
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(self.dumps(), encoding="utf-8")
        return out

    def format_tables(self) -> str:
        """Human-readable comparison, ablation and truncation tables"""
        out: list[str] = []

        def banner(title: str) -> None:
            out.append("=" * 60)
            out.append(title)
            out.append("=" * 60)

        def rows(label: str, summaries: dict[str, RankSummary]) -> None:
            header = f"{label:<16}" + "".join(f"{'Top-' + str(k):>12}" for k in TOP_K_LEVELS)
            out.append(header + f"{'MFR':>9}")
            for name, s in summaries.items():
                cells = "".join(
                    f"{f'{s.top[k]} ({s.percent[k]}%)':>12}" for k in TOP_K_LEVELS
                )
                out.append(f"{name:<16}{cells}{s.mfr:>9.3f}")

        banner(f"Localization effectiveness: {self.corpus} ({len(self.succeeded)} bugs)")
        for category, summaries in self.by_category().items():
            out.append(f"\n[{category}]")
            rows("mode", summaries)
        out.append("\n[overall]")
        rows("mode", self.overall())

        ablation = {m: s for m, s in self.overall().items() if m in PECKER_MODES}
        if len(ablation) > 1:
            out.append("")
            banner("Ablation")
            for category, summaries in self.by_category().items():
                out.append(f"\n[{category}]")
                rows("mode", {m: s for m, s in summaries.items() if m in PECKER_MODES})

        if self.truncation_levels:
            out.append("")
            banner("Trace truncation")
            for category, summaries in self.truncation_by_category().items():
                out.append(f"\n[{category}]")
                rows("truncation", summaries)
            out.append("\n[overall]")
            rows("truncation", self.truncation())

        match = self.empc_match()
        out.append("")
        banner("EMPC match")
        out.append(
            f"matched {match.matched}/{match.compared} ({match.ratio:.1%})"
            + (f", skipped {len(match.skipped)}" if match.skipped else "")
        )

        out.append("")
        banner("Per-bug ranks")
        out.append(f"{'bug':<24}" + "".join(f"{m:>15}" for m in self.modes))
        for bug in self.bugs:
            if bug.ok:
                out.append(f"{bug.id:<24}" + "".join(f"{bug.ranks[m]:>15}" for m in self.modes))
            else:
                out.append(f"{bug.id:<24}  error: {bug.error}")

        return "\n".join(out) + "\n"
