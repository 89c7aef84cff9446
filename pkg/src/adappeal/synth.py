"""Synthetic corpus generators with planted statistical structure.

Real ad-performance data is proprietary, so end-to-end checks run on
generated corpora: CTR and one category's occurrence ratio are drawn
from a joint normal with a chosen correlation, then rendered as actual
ad text whose tagged percentage reproduces the planted value (up to
token-count granularity).
"""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Sequence

import numpy as np

from .chartypes import CharClass
from .ingest import AdRecord

# Mean per-class character counts observed for short Japanese ad captions;
# used as generator targets for profile-shaped random text.
HEALTH_MAIN_CHAR_TARGETS = {
    CharClass.NUMBER: 2.7,
    CharClass.ALPHABETIC: 1.2,
    CharClass.KATAKANA: 17.4,
    CharClass.HIRAGANA: 20.4,
    CharClass.KANJI: 23.3,
    CharClass.SYMBOL: 6.8,
    CharClass.EMOJI: 0.8,
}

_CLASS_ALPHABETS = {
    CharClass.NUMBER: "0123456789",
    CharClass.ALPHABETIC: "abcdefghijklmnopqrstuvwxyz",
    CharClass.KATAKANA: "アイウエオカキクケコサシスセソタチツテト",
    CharClass.HIRAGANA: "あいうえおかきくけこさしすせそたちつてと",
    CharClass.KANJI: "価格円試験健康肌美容効果安心",
    CharClass.SYMBOL: "!?★【】／＼・",
    CharClass.EMOJI: "😀😊🎉✨💖",
}

FILLER_TOKENS = ("lorem", "ipsum", "dolor", "amet", "tempor", "labore")
NEGEMO_TOKENS = ("unease", "dread", "worry")


def planted_corpus(seed: int, n_ads: int = 3000, target_rho: float = 0.30,
                   product_category: str = "health", tokens_per_ad: int = 50,
                   ctr_mean: float = 0.0075, ctr_sd: float = 0.002,
                   pct_mean: float = 30.0, pct_sd: float = 8.0,
                   ) -> list[AdRecord]:
    """Corpus where the negemo occurrence ratio correlates with CTR.

    (CTR, negemo%) pairs come from a joint normal with correlation
    ``target_rho``; the text realizes the percentage by mixing negemo
    tokens among fillers, so the measured correlation after the full
    tagging pipeline recovers the plant up to rounding noise.
    """
    rng = np.random.default_rng(seed)
    z1 = rng.standard_normal(n_ads)
    z2 = rng.standard_normal(n_ads)
    ctr = np.clip(ctr_mean + ctr_sd * z1, 1e-4, 0.5)
    pct = np.clip(pct_mean + pct_sd * (target_rho * z1
                                       + np.sqrt(1 - target_rho ** 2) * z2),
                  0.0, 100.0)
    records = []
    for i in range(n_ads):
        impressions = int(rng.integers(10000, 60000))
        clicks = int(round(ctr[i] * impressions))
        clicks = min(max(clicks, 0), impressions)
        k = int(round(pct[i] * tokens_per_ad / 100.0))
        k = min(max(k, 0), tokens_per_ad)
        tokens = [str(rng.choice(NEGEMO_TOKENS)) for _ in range(k)]
        tokens += [str(rng.choice(FILLER_TOKENS)) for _ in range(tokens_per_ad - k)]
        order = rng.permutation(tokens_per_ad)
        main_text = " ".join(tokens[j] for j in order)
        records.append(AdRecord(
            ad_id=f"{product_category}-{i:05d}",
            product_category=product_category,
            main_text=main_text,
            impressions=impressions,
            clicks=clicks,
        ))
    return records


def profile_shaped_text(rng: np.random.Generator,
                        targets: dict[CharClass, float]) -> str:
    """Random text whose expected per-class character counts hit ``targets``."""
    chars: list[str] = []
    for cls, mean in targets.items():
        n = int(rng.poisson(mean))
        alphabet = _CLASS_ALPHABETS[cls]
        chars.extend(str(rng.choice(list(alphabet))) for _ in range(n))
    idx = rng.permutation(len(chars))
    return "".join(chars[i] for i in idx)


def write_csv(records: Sequence[AdRecord], path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f)
        w.writerow(["ad_id", "product_category", "main_text", "in_image_text",
                    "image_ref", "impressions", "clicks"])
        for r in records:
            w.writerow([r.ad_id, r.product_category, r.main_text,
                        r.in_image_text or "", r.image_ref or "",
                        r.impressions, r.clicks])
