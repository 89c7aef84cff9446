import json
import logging

import pytest

from adappeal import filter_by_impressions, parse_records
from adappeal.ingest import AdRecord, SchemaError

HEADER = "ad_id,product_category,main_text,in_image_text,image_ref,impressions,clicks\n"


def csv_bytes(*rows: str) -> bytes:
    return (HEADER + "".join(r + "\n" for r in rows)).encode("utf-8")


class TestParseCsv:
    def test_well_formed_row(self):
        recs, errs = parse_records(csv_bytes("a1,health,text,,,10000,75"))
        assert errs == []
        (r,) = recs
        assert r.ad_id == "a1" and r.impressions == 10000 and r.clicks == 75
        assert r.in_image_text is None and r.image_ref is None

    def test_clicks_exceed_impressions(self):
        recs, errs = parse_records(csv_bytes("a1,health,t,,,100,200"))
        assert recs == []
        assert "clicks exceed impressions" in errs[0].reason

    def test_zero_impressions_rejected(self):
        _, errs = parse_records(csv_bytes("a1,health,t,,,0,0"))
        assert "CTR undefined" in errs[0].reason

    def test_duplicate_ad_id(self):
        recs, errs = parse_records(csv_bytes("a1,health,t,,,100,1",
                                             "a1,health,u,,,100,2"))
        assert len(recs) == 1
        assert "duplicate ad_id" in errs[0].reason

    def test_missing_columns_abort(self):
        with pytest.raises(SchemaError, match="missing required columns"):
            parse_records(b"ad_id,main_text\na1,t\n")

    def test_bad_row_does_not_abort(self):
        recs, errs = parse_records(csv_bytes("a1,health,t,,,100,1",
                                             "a2,health,t,,,notanumber,1",
                                             "a3,health,t,,,100,1"))
        assert [r.ad_id for r in recs] == ["a1", "a3"]
        assert len(errs) == 1 and errs[0].line == 3

    def test_accepted_plus_rejected_equals_rows(self):
        rows = [f"a{i},health,t,,,{100 if i % 2 else 0},1" for i in range(20)]
        recs, errs = parse_records(csv_bytes(*rows))
        assert len(recs) + len(errs) == 20

    def test_long_main_text_warns_not_rejects(self, caplog):
        text = "x" * 200
        with caplog.at_level(logging.WARNING):
            recs, errs = parse_records(csv_bytes(f"a1,health,{text},,,100,1"))
        assert len(recs) == 1 and errs == []
        assert any("125" in m for m in caplog.messages)

    def test_quoted_fields(self):
        recs, _ = parse_records(csv_bytes('a1,health,"hello, world",,,100,1'))
        assert recs[0].main_text == "hello, world"


class TestParseJsonl:
    def test_well_formed(self):
        row = {"ad_id": "a1", "product_category": "health", "main_text": "t",
               "impressions": 100, "clicks": 5}
        recs, errs = parse_records(json.dumps(row).encode(), format="jsonl")
        assert errs == [] and recs[0].clicks == 5

    def test_invalid_json_line(self):
        recs, errs = parse_records(b'{"ad_id": broken\n', format="jsonl")
        assert recs == [] and "invalid JSON" in errs[0].reason

    def test_missing_fields(self):
        _, errs = parse_records(b'{"ad_id": "a1"}\n', format="jsonl")
        assert "missing fields" in errs[0].reason

    def test_pre_tokenized_fields(self):
        row = {"ad_id": "a1", "product_category": "health", "main_text": "t",
               "impressions": 100, "clicks": 5, "main_tokens": ["不安", "だ"]}
        recs, _ = parse_records(json.dumps(row).encode(), format="jsonl")
        assert recs[0].main_tokens == ("不安", "だ")


def _rec(ad_id: str, impressions: int) -> AdRecord:
    return AdRecord(ad_id=ad_id, product_category="health", main_text="t",
                    impressions=impressions, clicks=1)


class TestFilter:
    def test_boundary(self):
        recs = [_rec("a", 9999), _rec("b", 10000), _rec("c", 10001)]
        ds = filter_by_impressions(recs)
        assert [r.ad_id for r in ds.records] == ["b", "c"]
        assert ds.filter_threshold == 10000

    def test_zero_threshold_is_identity(self):
        recs = [_rec("a", 5), _rec("b", 10)]
        ds = filter_by_impressions(recs, threshold=0)
        assert ds.records == tuple(recs)

    def test_idempotent(self):
        recs = [_rec(f"a{i}", i * 1000) for i in range(20)]
        once = filter_by_impressions(recs, 7000)
        twice = filter_by_impressions(once.records, 7000)
        assert twice.records == once.records

    def test_never_mutates_survivors(self):
        rec = _rec("a", 20000)
        ds = filter_by_impressions([rec])
        assert ds.records[0] is rec

    def test_negative_threshold_rejected(self):
        with pytest.raises(ValueError):
            filter_by_impressions([], threshold=-1)

    def test_may_be_empty(self):
        ds = filter_by_impressions([_rec("a", 1)], 10000)
        assert ds.records == ()
