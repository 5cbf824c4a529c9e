"""
Activation cycles: when a statement must have executed to explain the first
observed failure.

    C_act(S) = C_obs - EMPC(S)

Statements with infinite EMPC, or whose EMPC exceeds C_obs, cannot explain
the failure and are excluded.
"""

from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from enum import Enum

from src.analysis.empc import INFINITY, EmpcMap


class Exclusion(str, Enum):
    EMPC_INFINITE = "empc-infinite"
    NEGATIVE_CYCLE = "negative-cycle"


@dataclass(frozen=True)
class Activation:
    stmt_id: int
    c_act: int | None
    exclusion: Exclusion | None = None

    @property
    def excluded(self) -> bool:
        return self.exclusion is not None


class ActivationMap:
    """stmt_id -> activation cycle or exclusion reason"""

    def __init__(self, c_obs: int, entries: dict[int, Activation]) -> None:
        self.c_obs = c_obs
        self._entries = entries

    def __getitem__(self, stmt_id: int) -> Activation:
        return self._entries[stmt_id]

    def __iter__(self) -> Iterator[Activation]:
        return (self._entries[k] for k in sorted(self._entries))

    def __len__(self) -> int:
        return len(self._entries)

    def c_act(self, stmt_id: int) -> int | None:
        return self._entries[stmt_id].c_act

    def exclusion(self, stmt_id: int) -> Exclusion | None:
        return self._entries[stmt_id].exclusion


def activation_cycle(empc: EmpcMap, c_obs: int) -> ActivationMap:
    """
    Estimate every statement's activation cycle.

    Args:
        empc: EMPC map of a failing run
        c_obs: First failing cycle of that run

    Returns:
        ActivationMap covering every statement in the map
    """
    entries: dict[int, Activation] = {}
    for stmt_id, value in empc.statements().items():
        if value == INFINITY:
            entries[stmt_id] = Activation(stmt_id, None, Exclusion.EMPC_INFINITE)
        elif value > c_obs:
            entries[stmt_id] = Activation(stmt_id, None, Exclusion.NEGATIVE_CYCLE)
        else:
            entries[stmt_id] = Activation(stmt_id, c_obs - int(value))
    return ActivationMap(c_obs, entries)


def observation_only(stmt_ids: Iterable[int], c_obs: int) -> ActivationMap:
    """Ablation without activation localization: every C_act is C_obs"""
    return ActivationMap(c_obs, {s: Activation(s, c_obs) for s in stmt_ids})
