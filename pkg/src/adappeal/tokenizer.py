"""Deterministic text segmentation for dictionary tagging.

Rules:
  1. whitespace always splits; whitespace itself is never a token
  2. runs of number / alphabetic / symbol / emoji characters split at
     class transitions and are kept whole within a class
  3. CJK runs (hiragana, katakana, kanji) are segmented by greedy
     longest-match against dictionary stems when a Matcher is given,
     falling back to single-character tokens

Tokens are exact slices of the source text; joining them reproduces the
source with only whitespace removed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chartypes import CharClass, classify_char
from .liwc import Matcher

_CJK = {CharClass.HIRAGANA, CharClass.KATAKANA, CharClass.KANJI}


@dataclass(frozen=True)
class TokenList:
    tokens: tuple[str, ...]
    boundaries: tuple[tuple[int, int], ...]


def tokenize(text: str, matcher: Matcher | None = None) -> TokenList:
    tokens: list[str] = []
    bounds: list[tuple[int, int]] = []
    i, n = 0, len(text)
    while i < n:
        cls = classify_char(text[i])
        if cls == CharClass.WHITESPACE:
            i += 1
            continue
        if cls in _CJK:
            run_end = i
            while run_end < n and classify_char(text[run_end]) in _CJK:
                run_end += 1
            i = _segment_cjk_run(text, i, run_end, matcher, tokens, bounds)
        else:
            start = i
            while i < n and classify_char(text[i]) == cls:
                i += 1
            tokens.append(text[start:i])
            bounds.append((start, i))
    return TokenList(tokens=tuple(tokens), boundaries=tuple(bounds))


def _segment_cjk_run(text: str, start: int, end: int, matcher: Matcher | None,
                     tokens: list[str], bounds: list[tuple[int, int]]) -> int:
    i = start
    while i < end:
        step = 1
        if matcher is not None:
            hit = matcher.longest_stem_prefix(text[:end], i)
            if hit > 0:
                step = hit
        tokens.append(text[i:i + step])
        bounds.append((i, i + step))
        i += step
    return end
