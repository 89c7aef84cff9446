"""End-to-end composition: dataset + dictionary -> ReportBundle."""

from __future__ import annotations

from typing import Iterable, Sequence

from . import __version__
from .chartypes import profile_text
from .ingest import AdRecord, Dataset
from .liwc import Dictionary, Matcher, normalize_token
from .report import GroupReport, ReportBundle
from .stats import (CorrelationTable, correlation_table, ctr_series,
                    five_number_summary, mean_by_category, mean_char_profile)
from .tokenizer import tokenize


def record_tokens(record: AdRecord, field: str, matcher: Matcher,
                  stoplist: frozenset[str] = frozenset()) -> list[str]:
    """Tokens for one record field; pre-tokenized records bypass the segmenter."""
    pre = record.main_tokens if field == "main" else record.image_tokens
    if pre is not None:
        tokens = list(pre)
    else:
        text = record.main_text if field == "main" else (record.in_image_text or "")
        tokens = list(tokenize(text, matcher).tokens)
    if stoplist:
        tokens = [t for t in tokens if normalize_token(t) not in stoplist]
    return tokens


def analyze(ds: Dataset, dictionary: Dictionary, matcher: Matcher,
            fields: Sequence[str] = ("main", "image"), mode: str = "percent",
            stoplist: Iterable[str] = (),
            extra_metadata: dict | None = None) -> ReportBundle:
    """Run profiling, tagging, and statistics per product category."""
    stop = frozenset(normalize_token(t) for t in stoplist)
    groups = []
    for cat in sorted({r.product_category for r in ds.records}):
        recs = [r for r in ds.records if r.product_category == cat]
        sub = Dataset(records=tuple(recs), source_digest=ds.source_digest,
                      filter_threshold=ds.filter_threshold)
        char_tables = {}
        vectors = {}
        category_means = {}
        names = dictionary.category_names()
        for field in fields:
            texts = [r.main_text if field == "main" else (r.in_image_text or "")
                     for r in recs]
            char_tables[field] = mean_char_profile(profile_text(t) for t in texts)
            vecs = [matcher.tag_tokens(record_tokens(r, field, matcher, stop))
                    for r in recs]
            vectors[field] = vecs
            category_means[field] = {names[cid]: m
                                     for cid, m in mean_by_category(vecs).items()}
        if len(recs) >= 2:
            corr = correlation_table(sub, vectors, mode)
        else:
            corr = CorrelationTable(cells=(), mode=mode, n=len(recs))
        groups.append(GroupReport(
            product_category=cat,
            n_records=len(recs),
            ctr_summary=five_number_summary(ctr_series(sub)),
            char_tables=char_tables,
            correlation=corr,
            category_means=category_means,
        ))
    metadata = {
        "tool_version": __version__,
        "dataset_digest": ds.source_digest,
        "dictionary_digest": dictionary.source_digest,
        "min_impressions": ds.filter_threshold,
        "mode": mode,
        "fields": ",".join(fields),
        "record_count": len(ds.records),
    }
    if extra_metadata:
        metadata.update(extra_metadata)
    return ReportBundle(groups=tuple(groups),
                        category_names=dictionary.category_names(),
                        metadata=metadata)
