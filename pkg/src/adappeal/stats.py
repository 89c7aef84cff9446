"""CTR, Pearson correlation, and descriptive summaries.

Pearson is computed two-pass (means first, then centered sums) in
double precision with a fixed sequential reduction order, so identical
inputs give bit-identical results.  Zero variance in either series
yields the first-class UNDEFINED result rather than an exception:
category columns that never occur render as "-" downstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Literal, Mapping, Sequence

import numpy as np

from .ingest import Dataset
from .liwc import CategoryVector


class _Undefined:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "UNDEFINED"


UNDEFINED = _Undefined()

Field = Literal["main", "image"]
Mode = Literal["counts", "percent"]

_FIELD_RANK = {"main": 0, "image": 1}


def field_order(fields) -> list:
    """Presentation order: main text before in-image text, extras last."""
    return sorted(fields, key=lambda f: (_FIELD_RANK.get(f, 2), f))


def ctr(clicks: int, impressions: int) -> float:
    if impressions <= 0:
        raise ValueError("impressions must be positive")
    if not 0 <= clicks <= impressions:
        raise ValueError("clicks must be in [0, impressions]")
    return clicks / impressions


def ctr_series(ds: Dataset) -> list[float]:
    return [ctr(r.clicks, r.impressions) for r in ds.records]


def pearson(x: Sequence[float], y: Sequence[float]):
    """Pearson correlation, or UNDEFINED when either series is constant."""
    if len(x) != len(y):
        raise ValueError("series lengths differ")
    if len(x) < 2:
        raise ValueError("need at least 2 samples")
    xa = np.asarray(x, dtype=np.float64)
    ya = np.asarray(y, dtype=np.float64)
    dx = xa - xa.mean()
    dy = ya - ya.mean()
    sxx = float(np.dot(dx, dx))
    syy = float(np.dot(dy, dy))
    if sxx == 0.0 or syy == 0.0:
        return UNDEFINED
    return float(np.dot(dx, dy)) / (sxx * syy) ** 0.5


def pearson_naive(x: Sequence[float], y: Sequence[float]):
    """Direct textbook evaluation with exact accumulation (test oracle)."""
    import math

    n = len(x)
    if n != len(y):
        raise ValueError("series lengths differ")
    if n < 2:
        raise ValueError("need at least 2 samples")
    mx = math.fsum(x) / n
    my = math.fsum(y) / n
    num = math.fsum((xi - mx) * (yi - my) for xi, yi in zip(x, y))
    sxx = math.fsum((xi - mx) ** 2 for xi in x)
    syy = math.fsum((yi - my) ** 2 for yi in y)
    if sxx == 0.0 or syy == 0.0:
        return UNDEFINED
    return num / math.sqrt(sxx * syy)


@dataclass(frozen=True)
class CorrelationCell:
    category_id: int
    field: Field
    rho: object  # float or UNDEFINED
    n: int


@dataclass(frozen=True)
class CorrelationTable:
    cells: tuple[CorrelationCell, ...]
    mode: Mode
    n: int

    def cell(self, category_id: int, field: Field) -> CorrelationCell | None:
        for c in self.cells:
            if c.category_id == category_id and c.field == field:
                return c
        return None


def category_series(vectors: Sequence[CategoryVector], category_id: int,
                    mode: Mode = "percent") -> list[float]:
    if mode == "percent":
        return [v.percentages.get(category_id, 0.0) for v in vectors]
    return [float(v.counts.get(category_id, 0)) for v in vectors]


def correlation_table(ds: Dataset,
                      vectors: Mapping[Field, Sequence[CategoryVector]],
                      mode: Mode = "percent") -> CorrelationTable:
    """One Pearson cell per (category, field) against CTR."""
    if len(ds.records) < 2:
        raise ValueError("need at least 2 records for correlation")
    x = ctr_series(ds)
    cells: list[CorrelationCell] = []
    for fld in field_order(vectors):
        vecs = vectors[fld]
        if len(vecs) != len(ds.records):
            raise ValueError(f"{fld} vectors not aligned with dataset")
        category_ids = sorted(vecs[0].counts) if vecs else []
        for cid in category_ids:
            y = category_series(vecs, cid, mode)
            cells.append(CorrelationCell(category_id=cid, field=fld,
                                         rho=pearson(x, y), n=len(x)))
    return CorrelationTable(cells=tuple(cells), mode=mode, n=len(ds.records))


@dataclass(frozen=True)
class FiveNumberSummary:
    min: float
    q1: float
    median: float
    q3: float
    max: float
    mean: float

    @property
    def whiskers(self) -> tuple[float, float]:
        """1.5*IQR whisker bounds, clamped to the observed range."""
        iqr = self.q3 - self.q1
        return (max(self.min, self.q1 - 1.5 * iqr),
                min(self.max, self.q3 + 1.5 * iqr))


def five_number_summary(values: Sequence[float]) -> FiveNumberSummary:
    """Quartiles by linear interpolation (type-7), plus the mean."""
    if len(values) == 0:
        raise ValueError("empty input")
    a = np.asarray(values, dtype=np.float64)
    q1, med, q3 = np.quantile(a, [0.25, 0.5, 0.75])
    return FiveNumberSummary(min=float(a.min()), q1=float(q1), median=float(med),
                             q3=float(q3), max=float(a.max()), mean=float(a.mean()))


def mean_by_category(vectors: Sequence[CategoryVector]) -> dict[int, float]:
    """Arithmetic mean of per-record percentages, per category."""
    if not vectors:
        raise ValueError("empty vector sequence")
    sums: dict[int, float] = {}
    for v in vectors:
        for cid, pct in v.percentages.items():
            sums[cid] = sums.get(cid, 0.0) + pct
    return {cid: s / len(vectors) for cid, s in sorted(sums.items())}


def mean_char_profile(profiles: Iterable) -> tuple[dict, dict, float]:
    """Mean per-class character counts, mean per-text proportions, mean total.

    Proportions are averaged per text (a zero-length text contributes
    zero proportions), matching how per-ad ratios aggregate.
    """
    profiles = list(profiles)
    if not profiles:
        raise ValueError("empty profile sequence")
    n = len(profiles)
    keys = profiles[0].counts.keys()
    mean_counts = {k: sum(p.counts[k] for p in profiles) / n for k in keys}
    mean_props = {k: sum(p.proportions[k] for p in profiles) / n for k in keys}
    mean_total = sum(p.total for p in profiles) / n
    return mean_counts, mean_props, mean_total
