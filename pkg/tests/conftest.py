import pytest

from barparse import synthgen
from barparse.ocr import FixtureProvider, TextBox
from barparse.raster import BBox


def provider_for(fixture_entry, image_id="img"):
    boxes = [TextBox(e["text"], BBox(*e["bbox"]), e["confidence"])
             for e in fixture_entry]
    return FixtureProvider({image_id: boxes})


@pytest.fixture(scope="session")
def small_corpus():
    """24 charts covering all variants; shared across tests for speed."""
    return synthgen.corpus(24, seed=7)
