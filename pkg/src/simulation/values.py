"""
Two-state bit-vector values as they appear in stimulus files.
"""

import re

_VALUE_RE = re.compile(r"^(0[bB]_*[01][01_]*|0[xX]_*[0-9a-fA-F][0-9a-fA-F_]*|[0-9][0-9_]*)$")


def parse_value(raw: str | int) -> int:
    """
    Parse a stimulus value.

    Args:
        raw: `0b`-prefixed binary, `0x`-prefixed hex, decimal string, or int

    Returns:
        Nonnegative integer

    Raises:
        ValueError: On any other format or a negative int
    """
    if isinstance(raw, bool):
        raise ValueError(f"invalid value {raw!r}")
    if isinstance(raw, int):
        if raw < 0:
            raise ValueError(f"negative value {raw}")
        return raw
    if not _VALUE_RE.match(raw):
        raise ValueError(f"invalid value {raw!r}")

    text = raw.replace("_", "")
    if text[:2].lower() == "0b":
        return int(text[2:], 2)
    if text[:2].lower() == "0x":
        return int(text[2:], 16)
    return int(text, 10)


def fits(value: int, width: int) -> bool:
    return 0 <= value < (1 << width)


def format_value(value: int, width: int) -> str:
    """Canonical stimulus spelling: binary up to 8 bits, hex above"""
    if width <= 8:
        return f"0b{value:0{width}b}"
    return f"0x{value:0{(width + 3) // 4}x}"
