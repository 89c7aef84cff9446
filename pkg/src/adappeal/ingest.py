"""Loading and validating ad-performance records.

Input is CSV (header row, RFC-4180 quoting) or JSONL with the fields
``ad_id, product_category, main_text, in_image_text, image_ref,
impressions, clicks``.  Malformed rows never abort a parse; they come
back as RecordErrors alongside the accepted records.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import logging
from dataclasses import dataclass, replace
from typing import Iterable, Literal

log = logging.getLogger(__name__)

REQUIRED_FIELDS = ("ad_id", "product_category", "main_text", "impressions", "clicks")
MAIN_TEXT_LIMIT = 125  # platform guideline; longer texts warn, not fail


class SchemaError(ValueError):
    """Stream-level failure: required columns missing."""


@dataclass(frozen=True)
class AdRecord:
    ad_id: str
    product_category: str
    main_text: str
    in_image_text: str | None = None
    image_ref: str | None = None
    impressions: int = 0
    clicks: int = 0
    # Optional pre-tokenized fields (JSONL only); bypass the built-in segmenter.
    main_tokens: tuple[str, ...] | None = None
    image_tokens: tuple[str, ...] | None = None

    @property
    def ctr(self) -> float:
        return self.clicks / self.impressions


@dataclass(frozen=True)
class RecordError:
    line: int
    reason: str


@dataclass(frozen=True)
class Dataset:
    records: tuple[AdRecord, ...]
    source_digest: str
    filter_threshold: int


def parse_records(raw: bytes, format: Literal["csv", "jsonl"] = "csv",
                  ) -> tuple[list[AdRecord], list[RecordError]]:
    text = raw.decode("utf-8")
    if format == "csv":
        rows = _iter_csv(text)
    elif format == "jsonl":
        rows = _iter_jsonl(text)
    else:
        raise ValueError(f"unknown format {format!r}")

    records: list[AdRecord] = []
    errors: list[RecordError] = []
    seen_ids: set[str] = set()
    for line, row in rows:
        if isinstance(row, RecordError):
            errors.append(row)
            continue
        try:
            rec = _validate_row(row, line)
        except ValueError as e:
            errors.append(RecordError(line=line, reason=str(e)))
            continue
        if rec.ad_id in seen_ids:
            errors.append(RecordError(line=line, reason=f"duplicate ad_id {rec.ad_id!r}"))
            continue
        seen_ids.add(rec.ad_id)
        records.append(rec)
    return records, errors


def _iter_csv(text: str) -> Iterable[tuple[int, dict | RecordError]]:
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None:
        raise SchemaError("empty input: no header row")
    missing = [f for f in REQUIRED_FIELDS if f not in reader.fieldnames]
    if missing:
        raise SchemaError(f"missing required columns: {', '.join(missing)}")
    for row in reader:
        line = reader.line_num
        if None in row or row.get(None):
            yield line, RecordError(line=line, reason="too many fields")
            continue
        yield line, row


def _iter_jsonl(text: str) -> Iterable[tuple[int, dict | RecordError]]:
    for line, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip():
            continue
        try:
            row = json.loads(raw)
        except json.JSONDecodeError as e:
            yield line, RecordError(line=line, reason=f"invalid JSON: {e.msg}")
            continue
        if not isinstance(row, dict):
            yield line, RecordError(line=line, reason="row is not an object")
            continue
        missing = [f for f in REQUIRED_FIELDS if f not in row]
        if missing:
            yield line, RecordError(line=line,
                                    reason=f"missing fields: {', '.join(missing)}")
            continue
        yield line, row


def _validate_row(row: dict, line: int) -> AdRecord:
    ad_id = str(row.get("ad_id") or "").strip()
    if not ad_id:
        raise ValueError("empty ad_id")
    product_category = str(row.get("product_category") or "").strip()
    if not product_category:
        raise ValueError("empty product_category")
    main_text = str(row.get("main_text") or "")
    impressions = _to_int(row.get("impressions"), "impressions")
    clicks = _to_int(row.get("clicks"), "clicks")
    if impressions <= 0:
        raise ValueError("zero impressions: CTR undefined")
    if clicks < 0:
        raise ValueError("negative clicks")
    if clicks > impressions:
        raise ValueError("clicks exceed impressions")
    if len(main_text) > MAIN_TEXT_LIMIT:
        log.warning("line %d: main_text exceeds %d characters (%d)",
                    line, MAIN_TEXT_LIMIT, len(main_text))
    in_image_text = row.get("in_image_text")
    in_image_text = str(in_image_text) if in_image_text not in (None, "") else None
    image_ref = row.get("image_ref")
    image_ref = str(image_ref) if image_ref not in (None, "") else None
    main_tokens = _to_tokens(row.get("main_tokens"), "main_tokens")
    image_tokens = _to_tokens(row.get("image_tokens"), "image_tokens")
    return AdRecord(ad_id=ad_id, product_category=product_category,
                    main_text=main_text, in_image_text=in_image_text,
                    image_ref=image_ref, impressions=impressions, clicks=clicks,
                    main_tokens=main_tokens, image_tokens=image_tokens)


def _to_tokens(value, name: str) -> tuple[str, ...] | None:
    if value in (None, ""):
        return None
    if not isinstance(value, list) or not all(isinstance(t, str) and t for t in value):
        raise ValueError(f"{name} must be a list of non-empty strings")
    return tuple(value)


def _to_int(value, name: str) -> int:
    if isinstance(value, bool) or value is None:
        raise ValueError(f"{name} must be an integer")
    if isinstance(value, int):
        return value
    s = str(value).strip().replace(",", "")
    if not s.lstrip("-").isdigit():
        raise ValueError(f"{name} must be an integer, got {value!r}")
    return int(s)


def filter_by_impressions(records: Iterable[AdRecord], threshold: int = 10000,
                          source_digest: str = "") -> Dataset:
    """Keep records with impressions >= threshold (strictly below excluded)."""
    if threshold < 0:
        raise ValueError("threshold must be >= 0")
    kept = tuple(r for r in records if r.impressions >= threshold)
    return Dataset(records=kept, source_digest=source_digest,
                   filter_threshold=threshold)


def load_dataset(path: str, format: Literal["csv", "jsonl"] | None = None,
                 threshold: int = 10000,
                 ) -> tuple[Dataset, list[RecordError]]:
    """Read, validate, and filter a record file in one step."""
    if format is None:
        format = "jsonl" if path.endswith((".jsonl", ".ndjson")) else "csv"
    with open(path, "rb") as f:
        raw = f.read()
    digest = hashlib.sha256(raw).hexdigest()
    records, errors = parse_records(raw, format)
    return filter_by_impressions(records, threshold, source_digest=digest), errors


def with_in_image_text(record: AdRecord, text: str) -> AdRecord:
    return replace(record, in_image_text=text)
