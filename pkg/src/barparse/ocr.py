"""Pluggable text detection.

The pipeline never runs OCR itself: it asks a provider for word-level text
boxes. The fixture provider answers from a JSON file (deterministic, used by
all tests and by the synthetic corpus); the HTTP provider posts the image to
a configured endpoint that answers with the same box-list shape.

Fixture schema::

    {"images": {"<image_id>": [
        {"text": "...", "bbox": [x, y, w, h], "confidence": 0.99}, ...]}}
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import requests

from .errors import MalformedResponse, ProviderUnavailable
from .raster import BBox, Raster

DEFAULT_HTTP_TIMEOUT = 30.0


@dataclass(frozen=True)
class TextBox:
    text: str
    bbox: BBox
    confidence: float = 1.0

    def __post_init__(self):
        if not self.text:
            raise ValueError("empty text")
        if not 0.0 <= self.confidence <= 1.0:
            raise ValueError(f"confidence {self.confidence} out of [0,1]")


@dataclass(frozen=True)
class OcrResult:
    image_id: str
    boxes: tuple[TextBox, ...]


def _parse_box_entry(entry) -> TextBox:
    try:
        text = entry["text"]
        x, y, w, h = entry["bbox"]
        conf = entry.get("confidence", 1.0)
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedResponse(f"bad box entry {entry!r}") from exc
    if not isinstance(text, str) or not text:
        raise MalformedResponse(f"bad text in {entry!r}")
    try:
        box = BBox(int(x), int(y), int(w), int(h))
    except ValueError as exc:
        raise MalformedResponse(str(exc)) from exc
    try:
        conf = float(conf)
    except (TypeError, ValueError) as exc:
        raise MalformedResponse(f"bad confidence in {entry!r}") from exc
    if not 0.0 <= conf <= 1.0:
        raise MalformedResponse(f"confidence {conf} out of [0,1]")
    return TextBox(text, box, conf)


class FixtureProvider:
    """Answers recognize() from a preloaded fixture mapping, no I/O."""

    def __init__(self, images: dict[str, list[TextBox]]):
        self._images = {k: tuple(v) for k, v in images.items()}

    def fetch(self, image_id: str, img: Raster) -> tuple[TextBox, ...]:
        if image_id not in self._images:
            raise ProviderUnavailable(f"no fixture entry for {image_id!r}")
        return self._images[image_id]


class HttpProvider:
    """POSTs encoded image bytes to an OCR endpoint returning a JSON box list."""

    def __init__(self, url: str, timeout: float = DEFAULT_HTTP_TIMEOUT):
        self.url = url
        self.timeout = timeout

    def fetch(self, image_id: str, img: Raster) -> tuple[TextBox, ...]:
        from .raster import encode_png
        try:
            resp = requests.post(self.url, data=encode_png(img),
                                 headers={"Content-Type": "image/png"},
                                 timeout=self.timeout)
            resp.raise_for_status()
            payload = resp.json()
        except requests.RequestException as exc:
            raise ProviderUnavailable(f"OCR endpoint failed: {exc}") from exc
        except ValueError as exc:
            raise MalformedResponse(f"non-JSON response: {exc}") from exc
        if not isinstance(payload, list):
            raise MalformedResponse("expected a JSON list of boxes")
        return tuple(_parse_box_entry(e) for e in payload)


def load_fixture(path) -> FixtureProvider:
    """Parse a fixture file into a provider; fails fast on schema violations."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ProviderUnavailable(f"cannot read fixture {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise MalformedResponse(f"fixture {path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or not isinstance(doc.get("images"), dict):
        raise MalformedResponse(f"fixture {path} lacks an 'images' mapping")
    images = {}
    for image_id, entries in doc["images"].items():
        if not isinstance(entries, list):
            raise MalformedResponse(f"entry for {image_id!r} is not a list")
        images[image_id] = [_parse_box_entry(e) for e in entries]
    return FixtureProvider(images)


def _clip_box(tb: TextBox, width: int, height: int) -> TextBox | None:
    clipped = tb.bbox.clipped(width, height)
    if clipped is None:
        return None
    if clipped == tb.bbox:
        return tb
    return TextBox(tb.text, clipped, tb.confidence)


def recognize(provider, img: Raster, image_id: str = "") -> OcrResult:
    """Fetch text boxes for an image; out-of-bounds boxes are clipped."""
    raw = provider.fetch(image_id, img)
    boxes = []
    seen = set()
    for tb in raw:
        clipped = _clip_box(tb, img.width, img.height)
        if clipped is None:
            continue
        key = (clipped.text, clipped.bbox)
        if key in seen:  # identical text+box duplicates collapse
            continue
        seen.add(key)
        boxes.append(clipped)
    return OcrResult(image_id=image_id, boxes=tuple(boxes))
