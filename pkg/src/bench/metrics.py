"""
Corpus metrics: Top-K counts, mean first rank (MFR), and how often the
estimated activation cycle matches the seeded ground truth.
"""

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from config.analysis_rules import TOP_K_LEVELS
from src.errors import EmptyCorpus


def top_k(ranks: Iterable[int], k: int) -> int:
    """Number of bugs ranked within the first k positions"""
    return sum(1 for rank in ranks if rank <= k)


def mfr(ranks: Sequence[int]) -> float:
    """
    Mean first rank over bugs.

    Raises:
        EmptyCorpus: No ranks given
    """
    if not ranks:
        raise EmptyCorpus("mean first rank over zero bugs")
    return sum(ranks) / len(ranks)


def percentage(count: int, total: int) -> int:
    """Whole percent, rounded half up (21 of 41 -> 51)"""
    if total <= 0:
        raise EmptyCorpus("percentage over zero bugs")
    return (200 * count + total) // (2 * total)


@dataclass(frozen=True)
class RankSummary:
    """Top-K counts and MFR of one column of ranks"""

    bugs: int
    top: dict[int, int]
    mfr: float

    @property
    def percent(self) -> dict[int, int]:
        return {k: percentage(n, self.bugs) for k, n in self.top.items()}

    def to_dict(self) -> dict[str, object]:
        return {
            "bugs": self.bugs,
            "top": {f"top{k}": n for k, n in self.top.items()},
            "percent": {f"top{k}": p for k, p in self.percent.items()},
            "mfr": round(self.mfr, 3),
        }


def summarize(ranks: Sequence[int], levels: Sequence[int] = TOP_K_LEVELS) -> RankSummary:
    return RankSummary(len(ranks), {k: top_k(ranks, k) for k in levels}, mfr(ranks))


@dataclass(frozen=True)
class MatchSummary:
    matched: int
    compared: int
    skipped: list[str] = field(default_factory=list)

    @property
    def ratio(self) -> float:
        return self.matched / self.compared if self.compared else 0.0

    def to_dict(self) -> dict[str, object]:
        return {
            "matched": self.matched,
            "compared": self.compared,
            "ratio": round(self.ratio, 3),
            "skipped": list(self.skipped),
        }


def empc_match_ratio(
    pairs: Iterable[tuple[str, int | None, int | None]],
) -> MatchSummary:
    """
    Compare estimated activation cycles with ground truth.

    Args:
        pairs: (bug id, estimated C_act, true activation cycle); either cycle
            may be None (excluded statement, or no known ground truth)

    Returns:
        MatchSummary; bugs lacking ground truth are skipped and listed
    """
    matched = compared = 0
    skipped: list[str] = []
    for bug_id, estimated, truth in pairs:
        if truth is None:
            skipped.append(bug_id)
            continue
        compared += 1
        if estimated == truth:
            matched += 1
    return MatchSummary(matched, compared, skipped)
