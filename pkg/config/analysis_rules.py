"""
Controlled vocabularies and fixed limits for HDL analysis and benchmarking.
"""

from typing import Final

# ============================================================================
# Localization Modes
# ============================================================================

LOCALIZATION_MODES: Final[list[str]] = [
    "pecker",          # activation localization + trace pruning
    "pecker-no-al",    # activation cycle = first observed failure
    "pecker-no-ntp",   # no trace pruning after the activation cycle
    "tarantula",
    "ochiai",
]

PECKER_MODES: Final[list[str]] = ["pecker", "pecker-no-al", "pecker-no-ntp"]

BASELINE_MODES: Final[list[str]] = ["tarantula", "ochiai"]

# ============================================================================
# Trace Truncation
# ============================================================================

TRUNCATION_LEVELS: Final[list[str]] = [
    "full",   # drop every cycle after the activation cycle
    "half",   # keep the first half of the post-activation cycles
    "none",   # keep the whole trace
]

# ============================================================================
# Corpus
# ============================================================================

CORPUS_CATEGORIES: Final[list[str]] = ["easy", "medium"]

TOP_K_LEVELS: Final[tuple[int, ...]] = (1, 3, 5)

MUTATION_OPERATORS: Final[list[str]] = [
    "wrong_operator",
    "wrong_constant",
    "wrong_shift_direction",
    "wrong_branch_target",
]

# ============================================================================
# HDL Subset
# ============================================================================

UNSUPPORTED_KEYWORDS: Final[frozenset[str]] = frozenset(
    {
        "for",
        "while",
        "repeat",
        "forever",
        "function",
        "endfunction",
        "task",
        "endtask",
        "initial",
        "generate",
        "endgenerate",
        "genvar",
        "integer",
        "real",
        "casex",
        "casez",
        "fork",
        "join",
        "inout",
        "signed",
        "disable",
    }
)


class HdlLimits:
    """Width limits of the supported Verilog subset"""

    MIN_WIDTH: Final[int] = 1
    MAX_WIDTH: Final[int] = 64

    # Width of unsized literals (`12`, `'hff`)
    UNSIZED_WIDTH: Final[int] = 32

    @classmethod
    def width_ok(cls, width: int) -> bool:
        """Check a declared or literal width against the supported range"""
        return cls.MIN_WIDTH <= width <= cls.MAX_WIDTH
