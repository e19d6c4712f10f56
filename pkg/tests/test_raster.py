import io
import random

import numpy as np
import pytest
from PIL import Image

from barparse.errors import DecodeError
from barparse.raster import (BBox, BinaryImage, Raster, binarize, decode_image,
                             encode_png, render_binary, run_profiles)


def png_bytes(pixels, mode="RGB"):
    arr = np.asarray(pixels, dtype=np.uint8)
    buf = io.BytesIO()
    Image.fromarray(arr, mode).save(buf, format="PNG")
    return buf.getvalue()


class TestDecode:
    def test_single_white_pixel(self):
        img = decode_image(png_bytes([[[255, 255, 255]]]))
        assert (img.width, img.height) == (1, 1)
        assert img.arr.tolist() == [[[255, 255, 255]]]

    def test_known_pixels_roundtrip(self):
        data = png_bytes([[[0, 0, 0], [255, 0, 0]]])
        img = decode_image(data)
        assert img.arr.tolist() == [[[0, 0, 0], [255, 0, 0]]]

    def test_truncated_stream_raises(self):
        data = png_bytes([[[1, 2, 3]]])
        with pytest.raises(DecodeError):
            decode_image(data[:20])

    def test_garbage_raises(self):
        with pytest.raises(DecodeError):
            decode_image(b"not an image at all")

    def test_alpha_composites_over_white(self):
        rgba = np.zeros((1, 1, 4), dtype=np.uint8)  # fully transparent black
        img = decode_image(png_bytes(rgba, mode="RGBA"))
        assert img.arr.tolist() == [[[255, 255, 255]]]

    def test_jpeg_decodes(self):
        buf = io.BytesIO()
        Image.new("RGB", (5, 4), (10, 20, 30)).save(buf, format="JPEG")
        img = decode_image(buf.getvalue())
        assert (img.width, img.height) == (5, 4)

    def test_png_roundtrip_exact(self):
        rng = np.random.default_rng(3)
        arr = rng.integers(0, 256, size=(17, 11, 3), dtype=np.uint8)
        img = Raster(arr.copy())
        again = decode_image(encode_png(img))
        assert np.array_equal(again.arr, img.arr)


class TestBinarize:
    def test_all_white_is_background(self):
        img = Raster(np.full((3, 4, 3), 255, dtype=np.uint8))
        assert binarize(img, 128).bits.sum() == 0

    def test_all_black_is_ink(self):
        img = Raster(np.zeros((3, 4, 3), dtype=np.uint8))
        assert binarize(img, 128).bits.sum() == 12

    def test_luminance_threshold_by_hand(self):
        # luminance 0 < 128 -> ink; luminance 200 >= 128 -> background
        img = Raster(np.array([[[0, 0, 0], [200, 200, 200]]], dtype=np.uint8))
        assert binarize(img, 128).bits.tolist() == [[1, 0]]

    def test_idempotent_through_render(self):
        rng = np.random.default_rng(11)
        arr = rng.integers(0, 256, size=(12, 9, 3), dtype=np.uint8)
        first = binarize(Raster(arr), 128)
        again = binarize(render_binary(first), 128)
        assert np.array_equal(first.bits, again.bits)


def brute_force_profiles(bits):
    """Independent O(n^2) rescan: count runs cell by cell."""
    h, w = bits.shape

    def line_max(line):
        best = cur = 0
        for v in line:
            cur = cur + 1 if v else 0
            best = max(best, cur)
        return best

    rows = [line_max(bits[r, :]) for r in range(h)]
    cols = [line_max(bits[:, c]) for c in range(w)]
    return rows, cols


class TestRunProfiles:
    def test_hand_counted_row(self):
        bits = np.array([[1, 1, 0, 1]], dtype=np.uint8)
        prof = run_profiles(BinaryImage(bits))
        assert prof.row_max.tolist() == [2]
        assert prof.col_max.tolist() == [1, 1, 0, 1]

    def test_all_zero(self):
        prof = run_profiles(BinaryImage(np.zeros((4, 6), dtype=np.uint8)))
        assert prof.row_max.tolist() == [0] * 4
        assert prof.col_max.tolist() == [0] * 6

    def test_all_ones_row_equals_width(self):
        prof = run_profiles(BinaryImage(np.ones((2, 7), dtype=np.uint8)))
        assert prof.row_max.tolist() == [7, 7]
        assert prof.col_max.tolist() == [2] * 7

    def test_random_images_match_oracle(self):
        rng = np.random.default_rng(42)
        for _ in range(100):
            bits = (rng.random((64, 64)) < 0.5).astype(np.uint8)
            prof = run_profiles(BinaryImage(bits))
            rows, cols = brute_force_profiles(bits)
            assert prof.row_max.tolist() == rows
            assert prof.col_max.tolist() == cols

    def test_exhaustive_small_sizes_at_three_densities(self):
        rng = random.Random(5)
        for h in range(1, 17):
            for w in range(1, 17):
                for density in (0.0, 0.5, 1.0):
                    bits = np.array(
                        [[1 if rng.random() < density else 0
                          for _ in range(w)] for _ in range(h)],
                        dtype=np.uint8)
                    prof = run_profiles(BinaryImage(bits))
                    rows, cols = brute_force_profiles(bits)
                    assert prof.row_max.tolist() == rows
                    assert prof.col_max.tolist() == cols


class TestBBox:
    def test_degenerate_rejected(self):
        with pytest.raises(ValueError):
            BBox(0, 0, 0, 5)

    def test_union(self):
        assert BBox(100, 50, 40, 12).union(BBox(144, 50, 10, 12)) == \
            BBox(100, 50, 54, 12)

    def test_clip(self):
        assert BBox(-5, 0, 10, 10).clipped(100, 100) == BBox(0, 0, 5, 10)
        assert BBox(200, 0, 10, 10).clipped(100, 100) is None
