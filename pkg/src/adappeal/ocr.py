"""Pluggable OCR provider with a content-addressed on-disk cache.

The provider contract is deliberately thin: image bytes in, UTF-8 text
out.  Results are cached under ``<cache_dir>/<sha256-of-image>.txt`` so
repeated images cost one provider call.  Provider failures degrade to a
logged warning; the record passes through with in_image_text absent and
analysis proceeds on main text only.
"""

from __future__ import annotations

import hashlib
import logging
import os
from pathlib import Path
from typing import Callable, Protocol

from .ingest import AdRecord, with_in_image_text

log = logging.getLogger(__name__)

OCR_ENDPOINT_ENV = "ADAPPEAL_OCR_ENDPOINT"
OCR_TOKEN_ENV = "ADAPPEAL_OCR_TOKEN"


class OcrProvider(Protocol):
    def extract_text(self, image: bytes) -> str: ...


class HttpOcrProvider:
    """POSTs image bytes to an endpoint configured via environment.

    Expects a plain-text response body. Credentials are read from the
    environment and never logged.
    """

    def __init__(self, endpoint: str | None = None, token: str | None = None):
        self.endpoint = endpoint or os.environ.get(OCR_ENDPOINT_ENV)
        self._token = token or os.environ.get(OCR_TOKEN_ENV)
        if not self.endpoint:
            raise ValueError(f"OCR endpoint not configured ({OCR_ENDPOINT_ENV})")

    def extract_text(self, image: bytes) -> str:
        import requests

        headers = {"Content-Type": "application/octet-stream"}
        if self._token:
            headers["Authorization"] = f"Bearer {self._token}"
        resp = requests.post(self.endpoint, data=image, headers=headers, timeout=60)
        resp.raise_for_status()
        return resp.text


class OcrCache:
    """File cache keyed by sha256 of the image content."""

    def __init__(self, cache_dir: str | Path):
        self.dir = Path(cache_dir)
        self.dir.mkdir(parents=True, exist_ok=True)

    def _path(self, digest: str) -> Path:
        return self.dir / f"{digest}.txt"

    def get(self, digest: str) -> str | None:
        p = self._path(digest)
        if p.exists():
            return p.read_text("utf-8")
        return None

    def put(self, digest: str, text: str) -> None:
        tmp = self._path(digest).with_suffix(".tmp")
        tmp.write_text(text, "utf-8")
        tmp.replace(self._path(digest))  # atomic per digest; last write wins


def read_local_image(image_ref: str) -> bytes:
    with open(image_ref, "rb") as f:
        return f.read()


def resolve_in_image_text(record: AdRecord, provider: OcrProvider, cache: OcrCache,
                          fetch_image: Callable[[str], bytes] = read_local_image,
                          ) -> AdRecord:
    """Fill in_image_text from cache or one provider call.

    Records that already carry in_image_text, or have no image_ref, pass
    through untouched.
    """
    if record.in_image_text is not None or record.image_ref is None:
        return record
    try:
        image = fetch_image(record.image_ref)
    except OSError as e:
        log.warning("ad %s: cannot read image %s: %s", record.ad_id, record.image_ref, e)
        return record
    digest = hashlib.sha256(image).hexdigest()
    cached = cache.get(digest)
    if cached is not None:
        return with_in_image_text(record, cached)
    try:
        text = provider.extract_text(image)
    except Exception as e:
        log.warning("ad %s: OCR provider failed: %s", record.ad_id, e)
        return record
    cache.put(digest, text)
    return with_in_image_text(record, text)
