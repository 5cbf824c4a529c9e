"""
Ranking modes: the full method, its two ablations and the two baselines.
"""

from enum import Enum

from src.localization.baselines import Formula
from src.localization.pruning import TruncationLevel


class LocalizationMode(str, Enum):
    PECKER = "pecker"
    PECKER_NO_AL = "pecker-no-al"
    PECKER_NO_NTP = "pecker-no-ntp"
    TARANTULA = "tarantula"
    OCHIAI = "ochiai"

    @property
    def is_baseline(self) -> bool:
        return self in (LocalizationMode.TARANTULA, LocalizationMode.OCHIAI)

    @property
    def uses_activation(self) -> bool:
        return self is not LocalizationMode.PECKER_NO_AL

    @property
    def formula(self) -> Formula:
        if not self.is_baseline:
            raise ValueError(f"mode {self.value} has no baseline formula")
        return Formula(self.value)

    def effective_truncation(self, level: TruncationLevel) -> TruncationLevel:
        """pecker-no-ntp never prunes, whatever level was asked for"""
        if self is LocalizationMode.PECKER_NO_NTP:
            return TruncationLevel.NONE
        return level
