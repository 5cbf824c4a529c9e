"""
Ranked list of suspicious statements.

Candidates (aef > 0, not excluded) come first, ordered by

    aef desc, 1/aep desc, EMPC asc, depth desc, stmt_id asc

Everything else follows, ordered by Ochiai over the unpruned spectra and
then stmt_id. Baseline modes order every statement by score desc, stmt_id asc.
"""

import json
import math
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from typing import Any

from src.analysis.empc import Empc
from src.localization.activation import Exclusion
from src.localization.scoring import SuspicionScore


@dataclass(frozen=True)
class StatementEvidence:
    """Everything known about one statement before ranking"""

    stmt_id: int
    kind: str
    location: str
    line: int
    depth: int
    fallback: float
    score: SuspicionScore | None = None
    baseline: float | None = None
    c_act: int | None = None
    exclusion: Exclusion | None = None
    empc: Empc | None = None

    @property
    def is_candidate(self) -> bool:
        return self.exclusion is None and self.score is not None and self.score.aef > 0


@dataclass(frozen=True)
class RankedEntry:
    rank: int
    evidence: StatementEvidence
    candidate: bool

    @property
    def stmt_id(self) -> int:
        return self.evidence.stmt_id

    @property
    def line(self) -> int:
        return self.evidence.line

    @property
    def location(self) -> str:
        return self.evidence.location

    @property
    def score(self) -> SuspicionScore | None:
        return self.evidence.score

    def to_dict(self) -> dict[str, Any]:
        ev = self.evidence
        entry: dict[str, Any] = {
            "rank": self.rank,
            "stmt_id": ev.stmt_id,
            "location": ev.location,
            "kind": ev.kind,
            "candidate": self.candidate,
        }
        if ev.score is not None:
            entry.update(ev.score.to_dict())
        if ev.baseline is not None:
            entry["baseline"] = round(ev.baseline, 6)
        else:
            entry["fallback_ochiai"] = round(ev.fallback, 6)
        if ev.exclusion is not None:
            entry["exclusion"] = ev.exclusion.value
        elif ev.c_act is not None:
            entry["c_act"] = ev.c_act
        if ev.empc is not None:
            entry["empc"] = "inf" if ev.empc == math.inf else int(ev.empc)
        return entry


class RankedList:
    """Totally ordered statements with 1-based ranks"""

    def __init__(
        self,
        mode: str,
        truncation: str,
        first_fail_cycle: int,
        entries: Sequence[RankedEntry],
    ) -> None:
        self.mode = mode
        self.truncation = truncation
        self.first_fail_cycle = first_fail_cycle
        self.entries = tuple(entries)
        self._rank = {e.stmt_id: e.rank for e in self.entries}

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[RankedEntry]:
        return iter(self.entries)

    def __getitem__(self, index: int) -> RankedEntry:
        return self.entries[index]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RankedList):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __repr__(self) -> str:
        head = [e.stmt_id for e in self.entries[:5]]
        return f"RankedList(mode={self.mode}, statements={len(self)}, top={head})"

    @property
    def order(self) -> list[int]:
        return [e.stmt_id for e in self.entries]

    def rank_of(self, stmt_id: int) -> int:
        return self._rank[stmt_id]

    def best_rank_on_line(self, line: int) -> int | None:
        """Lowest rank among statements whose span starts on `line`"""
        ranks = [e.rank for e in self.entries if e.line == line]
        return min(ranks) if ranks else None

    def top(self, k: int) -> list[RankedEntry]:
        return list(self.entries[:k])

    def to_dict(self) -> dict[str, Any]:
        return {
            "mode": self.mode,
            "truncation": self.truncation,
            "first_fail_cycle": self.first_fail_cycle,
            "entries": [e.to_dict() for e in self.entries],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def _candidate_key(ev: StatementEvidence) -> tuple:
    assert ev.score is not None
    empc = math.inf if ev.empc is None else ev.empc
    return (-ev.score.aef, -ev.score.inv_aep, empc, -ev.depth, ev.stmt_id)


def _fallback_key(ev: StatementEvidence) -> tuple:
    return (-ev.fallback, ev.stmt_id)


def _baseline_key(ev: StatementEvidence) -> tuple:
    return (-(ev.baseline or 0.0), ev.stmt_id)


def rank_statements(
    evidence: Sequence[StatementEvidence],
    mode: str,
    truncation: str,
    first_fail_cycle: int,
    baseline: bool = False,
) -> RankedList:
    """
    Order statements into a RankedList.

    Args:
        evidence: One record per statement
        mode: Mode name recorded in the list
        truncation: Truncation level recorded in the list
        first_fail_cycle: First failing cycle of the first failing test
        baseline: Order by baseline score instead of the dual score

    Returns:
        RankedList covering every statement exactly once
    """
    if baseline:
        ordered = sorted(evidence, key=_baseline_key)
        return RankedList(
            mode,
            truncation,
            first_fail_cycle,
            [RankedEntry(i + 1, ev, (ev.baseline or 0.0) > 0) for i, ev in enumerate(ordered)],
        )

    candidates = sorted((ev for ev in evidence if ev.is_candidate), key=_candidate_key)
    rest = sorted((ev for ev in evidence if not ev.is_candidate), key=_fallback_key)

    entries = [RankedEntry(i + 1, ev, True) for i, ev in enumerate(candidates)]
    offset = len(entries)
    entries += [RankedEntry(offset + i + 1, ev, False) for i, ev in enumerate(rest)]
    return RankedList(mode, truncation, first_fail_cycle, entries)
