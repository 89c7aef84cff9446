"""Character classification and per-text character profiles.

Every Unicode scalar maps to exactly one of seven public classes
(number, alphabetic, katakana, hiragana, kanji, symbol, emoji) plus an
internal whitespace class that is excluded from totals.  The script
ranges live in a versioned data file (``data/charclass.tsv``) so the
taxonomy can be revised without code changes; codepoints not covered by
the table fall back to NFKC-based digit/Latin detection and finally to
symbol.
"""

from __future__ import annotations

import unicodedata
from bisect import bisect_right
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources


class CharClass(Enum):
    NUMBER = "number"
    ALPHABETIC = "alphabetic"
    KATAKANA = "katakana"
    HIRAGANA = "hiragana"
    KANJI = "kanji"
    SYMBOL = "symbol"
    EMOJI = "emoji"
    WHITESPACE = "whitespace"  # internal, excluded from totals


PUBLIC_CLASSES = (
    CharClass.NUMBER,
    CharClass.ALPHABETIC,
    CharClass.KATAKANA,
    CharClass.HIRAGANA,
    CharClass.KANJI,
    CharClass.SYMBOL,
    CharClass.EMOJI,
)

# Cluster-control scalars: these attach to a preceding emoji (or promote
# it) rather than counting on their own.
_ZWJ = 0x200D
_VS16 = 0xFE0F
_SKIN_TONE = range(0x1F3FB, 0x1F400)


def _load_ranges() -> tuple[list[int], list[int], list[CharClass]]:
    starts: list[tuple[int, int, CharClass]] = []
    text = resources.files("adappeal.data").joinpath("charclass.tsv").read_text("utf-8")
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        lo_hex, hi_hex, name = line.split("\t")
        starts.append((int(lo_hex, 16), int(hi_hex, 16), CharClass(name)))
    starts.sort()
    return (
        [s for s, _, _ in starts],
        [e for _, e, _ in starts],
        [c for _, _, c in starts],
    )


_RANGE_STARTS, _RANGE_ENDS, _RANGE_CLASSES = _load_ranges()


def classify_char(c: str) -> CharClass:
    """Classify a single Unicode scalar. Total: never raises on valid input."""
    if len(c) != 1:
        raise ValueError("classify_char expects a single character")
    if c.isspace():
        return CharClass.WHITESPACE
    cp = ord(c)
    i = bisect_right(_RANGE_STARTS, cp) - 1
    if i >= 0 and cp <= _RANGE_ENDS[i]:
        return _RANGE_CLASSES[i]
    # Fallback: NFKC first so full-width and compatibility digits/letters fold.
    folded = unicodedata.normalize("NFKC", c)
    if folded and all(unicodedata.category(ch) == "Nd" for ch in folded):
        return CharClass.NUMBER
    if folded and all("LATIN" in unicodedata.name(ch, "") and ch.isalpha() for ch in folded):
        return CharClass.ALPHABETIC
    return CharClass.SYMBOL


@dataclass(frozen=True)
class CharProfile:
    """Counts and proportions of the seven public classes over one text."""

    counts: dict[CharClass, int]
    total: int
    proportions: dict[CharClass, float] = field(default_factory=dict)

    @classmethod
    def from_counts(cls, counts: dict[CharClass, int]) -> "CharProfile":
        full = {c: counts.get(c, 0) for c in PUBLIC_CLASSES}
        total = sum(full.values())
        props = {c: (full[c] / total if total else 0.0) for c in PUBLIC_CLASSES}
        return cls(counts=full, total=total, proportions=props)


def profile_text(text: str) -> CharProfile:
    """Count characters per class; emoji sequences (ZWJ, skin tone, VS16)
    count as a single emoji.

    Whitespace is skipped. Empty text yields total=0 with all-zero
    proportions.
    """
    counts: dict[CharClass, int] = {c: 0 for c in PUBLIC_CLASSES}
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        cls = classify_char(ch)
        if cls == CharClass.WHITESPACE:
            i += 1
            continue
        # VS16 promotes the preceding character to emoji presentation.
        if i + 1 < n and ord(text[i + 1]) == _VS16:
            cls = CharClass.EMOJI
        if cls == CharClass.EMOJI:
            i = _consume_emoji_cluster(text, i)
            counts[CharClass.EMOJI] += 1
            continue
        counts[cls] += 1
        i += 1
    return CharProfile.from_counts(counts)


def _consume_emoji_cluster(text: str, i: int) -> int:
    """Return the index just past the emoji cluster starting at ``i``."""
    n = len(text)
    i += 1
    while i < n:
        cp = ord(text[i])
        if cp == _VS16 or cp in _SKIN_TONE:
            i += 1
        elif cp == _ZWJ and i + 1 < n:
            i += 2  # joined continuation stays in the same cluster
            # a VS16/skin tone may trail the joined scalar; loop handles it
        else:
            break
    return i
