"""Image decoding, binarization and run-length profiles.

Pixel coordinate convention used everywhere in this package: origin at the
top-left corner, x grows right (columns), y grows down (rows).
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field

import numpy as np
from PIL import Image, UnidentifiedImageError

from .errors import DecodeError

# Rec.601 luma weights; rounded half-up so binarization is bit-exact.
LUMA_WEIGHTS = (0.299, 0.587, 0.114)
DEFAULT_BINARIZE_THRESHOLD = 128


@dataclass(frozen=True)
class BBox:
    """Axis-aligned pixel rectangle: left column, top row, width, height."""

    x: int
    y: int
    w: int
    h: int

    def __post_init__(self):
        if self.w < 1 or self.h < 1:
            raise ValueError(f"degenerate box {self}")

    @property
    def right(self) -> int:
        """Column just past the rightmost pixel."""
        return self.x + self.w

    @property
    def bottom(self) -> int:
        """Row just past the lowest pixel."""
        return self.y + self.h

    @property
    def cx(self) -> float:
        return self.x + self.w / 2.0

    @property
    def cy(self) -> float:
        return self.y + self.h / 2.0

    @property
    def area(self) -> int:
        return self.w * self.h

    def union(self, other: "BBox") -> "BBox":
        x = min(self.x, other.x)
        y = min(self.y, other.y)
        return BBox(x, y, max(self.right, other.right) - x,
                    max(self.bottom, other.bottom) - y)

    def contains_point(self, px: float, py: float) -> bool:
        return self.x <= px < self.right and self.y <= py < self.bottom

    def clipped(self, width: int, height: int) -> "BBox | None":
        """Intersection with the image rectangle, or None if empty."""
        x0 = max(self.x, 0)
        y0 = max(self.y, 0)
        x1 = min(self.right, width)
        y1 = min(self.bottom, height)
        if x1 - x0 < 1 or y1 - y0 < 1:
            return None
        return BBox(x0, y0, x1 - x0, y1 - y0)

    def as_list(self) -> list[int]:
        return [self.x, self.y, self.w, self.h]


@dataclass(frozen=True)
class Raster:
    """Decoded RGB image, shape (height, width, 3), dtype uint8."""

    arr: np.ndarray = field(repr=False)

    def __post_init__(self):
        a = self.arr
        if a.ndim != 3 or a.shape[2] != 3 or a.dtype != np.uint8:
            raise ValueError("Raster needs a (H, W, 3) uint8 array")
        if a.shape[0] < 1 or a.shape[1] < 1:
            raise ValueError("empty raster")
        a.setflags(write=False)

    @property
    def width(self) -> int:
        return self.arr.shape[1]

    @property
    def height(self) -> int:
        return self.arr.shape[0]


@dataclass(frozen=True)
class BinaryImage:
    """Ink mask: 1 = ink (dark), 0 = background. Shape (height, width)."""

    bits: np.ndarray = field(repr=False)

    def __post_init__(self):
        b = self.bits
        if b.ndim != 2 or b.dtype != np.uint8:
            raise ValueError("BinaryImage needs a (H, W) uint8 array")
        b.setflags(write=False)

    @property
    def width(self) -> int:
        return self.bits.shape[1]

    @property
    def height(self) -> int:
        return self.bits.shape[0]


@dataclass(frozen=True)
class RunProfile:
    """Longest contiguous 1-run per row and per column of a BinaryImage."""

    row_max: np.ndarray = field(repr=False)  # length = height
    col_max: np.ndarray = field(repr=False)  # length = width


def decode_image(data: bytes) -> Raster:
    """Decode PNG/JPEG bytes; alpha (if any) is composited over white."""
    try:
        img = Image.open(io.BytesIO(data))
        img.load()
    except (UnidentifiedImageError, OSError, ValueError) as exc:
        raise DecodeError(f"cannot decode image: {exc}") from exc
    if img.mode in ("RGBA", "LA", "PA") or (img.mode == "P" and
                                            "transparency" in img.info):
        rgba = img.convert("RGBA")
        bg = Image.new("RGBA", rgba.size, (255, 255, 255, 255))
        img = Image.alpha_composite(bg, rgba).convert("RGB")
    else:
        img = img.convert("RGB")
    return Raster(np.asarray(img, dtype=np.uint8).copy())


def encode_png(img: Raster) -> bytes:
    """Lossless PNG bytes for a raster (test helper and gen output)."""
    buf = io.BytesIO()
    Image.fromarray(img.arr).save(buf, format="PNG")
    return buf.getvalue()


def binarize(img: Raster, threshold: int = DEFAULT_BINARIZE_THRESHOLD) -> BinaryImage:
    """Ink bit = 1 where rounded luminance falls below `threshold`."""
    a = img.arr.astype(np.float64)
    lum = LUMA_WEIGHTS[0] * a[:, :, 0] + LUMA_WEIGHTS[1] * a[:, :, 1] \
        + LUMA_WEIGHTS[2] * a[:, :, 2]
    lum = np.floor(lum + 0.5)  # round half up
    return BinaryImage((lum < threshold).astype(np.uint8))


def render_binary(bin_img: BinaryImage) -> Raster:
    """Render ink bits back to black-on-white RGB."""
    gray = np.where(bin_img.bits == 1, 0, 255).astype(np.uint8)
    return Raster(np.repeat(gray[:, :, None], 3, axis=2))


def _max_runs_along_axis(bits: np.ndarray, axis: int) -> np.ndarray:
    # Scan line by line, keeping a running run length per perpendicular index.
    if axis == 1:
        work = bits
    else:
        work = bits.T
    n = work.shape[0]
    run = np.zeros(n, dtype=np.int64)
    best = np.zeros(n, dtype=np.int64)
    for j in range(work.shape[1]):
        run = (run + 1) * work[:, j]
        np.maximum(best, run, out=best)
    return best


def run_profiles(bin_img: BinaryImage) -> RunProfile:
    """Max-continuous-ones profile along every row and every column."""
    bits = bin_img.bits.astype(np.int64)
    return RunProfile(row_max=_max_runs_along_axis(bits, axis=1),
                      col_max=_max_runs_along_axis(bits, axis=0))
