from adappeal.ingest import AdRecord
from adappeal.ocr import OcrCache, resolve_in_image_text


class CountingProvider:
    def __init__(self, text="先着15,000名様限定"):
        self.calls = 0
        self.text = text

    def extract_text(self, image: bytes) -> str:
        self.calls += 1
        return self.text


class FailingProvider:
    def extract_text(self, image: bytes) -> str:
        raise RuntimeError("service unavailable")


def _rec(ad_id="a1", image_ref="img-1", in_image_text=None):
    return AdRecord(ad_id=ad_id, product_category="health", main_text="t",
                    in_image_text=in_image_text, image_ref=image_ref,
                    impressions=10000, clicks=10)


def _fetch(images):
    return lambda ref: images[ref]


def test_provider_result_stored_and_cached(tmp_path):
    cache = OcrCache(tmp_path)
    provider = CountingProvider()
    out = resolve_in_image_text(_rec(), provider, cache,
                                fetch_image=_fetch({"img-1": b"bytes"}))
    assert out.in_image_text == "先着15,000名様限定"
    assert provider.calls == 1
    import hashlib
    digest = hashlib.sha256(b"bytes").hexdigest()
    assert (tmp_path / f"{digest}.txt").read_text("utf-8") == out.in_image_text


def test_cache_hit_skips_provider(tmp_path):
    cache = OcrCache(tmp_path)
    provider = CountingProvider()
    fetch = _fetch({"img-1": b"bytes"})
    resolve_in_image_text(_rec("a1"), provider, cache, fetch_image=fetch)
    out = resolve_in_image_text(_rec("a2"), provider, cache, fetch_image=fetch)
    assert provider.calls == 1
    assert out.in_image_text == provider.text


def test_shared_image_one_call(tmp_path):
    cache = OcrCache(tmp_path)
    provider = CountingProvider()
    fetch = _fetch({"shared": b"same-bytes"})
    for i in range(5):
        resolve_in_image_text(_rec(f"a{i}", image_ref="shared"), provider, cache,
                              fetch_image=fetch)
    assert provider.calls == 1


def test_calls_bounded_by_distinct_digests(tmp_path):
    cache = OcrCache(tmp_path)
    provider = CountingProvider()
    images = {f"img-{i}": (b"x" if i % 2 else b"y") for i in range(10)}
    for i in range(10):
        resolve_in_image_text(_rec(f"a{i}", image_ref=f"img-{i}"), provider, cache,
                              fetch_image=_fetch(images))
    assert provider.calls <= 2


def test_existing_text_passes_through(tmp_path):
    provider = CountingProvider()
    rec = _rec(in_image_text="already here")
    out = resolve_in_image_text(rec, provider, OcrCache(tmp_path))
    assert out is rec
    assert provider.calls == 0


def test_no_image_ref_passes_through(tmp_path):
    rec = _rec(image_ref=None)
    out = resolve_in_image_text(rec, CountingProvider(), OcrCache(tmp_path))
    assert out is rec


def test_provider_failure_degrades(tmp_path, caplog):
    out = resolve_in_image_text(_rec(), FailingProvider(), OcrCache(tmp_path),
                                fetch_image=_fetch({"img-1": b"bytes"}))
    assert out.in_image_text is None
    assert any("OCR provider failed" in m for m in caplog.messages)


def test_unreadable_image_degrades(tmp_path, caplog):
    out = resolve_in_image_text(_rec(image_ref=str(tmp_path / "missing.png")),
                                CountingProvider(), OcrCache(tmp_path))
    assert out.in_image_text is None
