"""Bar extraction and value recovery.

Legend boxes are whitened, the plot's non-white pixels are clustered to the
legend colors (which splits stacked charts into one simple plot per series),
connected components give the bar rectangles, and the value-tick ratio maps
pixel extents back to data values.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy import ndimage

from .axes import AxesGeometry
from .errors import (AmbiguousOrientation, EmptyChart, NonMonotonicTicks,
                     ZeroPixelSpan)
from .legend import LegendSet
from .raster import BBox, BinaryImage, Raster
from .ticklabel import TickSet

# Pixels further than this (squared RGB distance) from every seed color stay
# unassigned; keeps axis ink and gridlines out of the series masks.
CLUSTER_DISTANCE_CAP = 3 * 60 * 60
MIN_BAR_AREA = 25
WHITE_MIN_CHANNEL = 250


class Orientation(Enum):
    VERTICAL = "vertical"
    HORIZONTAL = "horizontal"


@dataclass(frozen=True)
class BarRect:
    series: str
    rect: BBox

    def category_anchor(self, orientation: Orientation) -> float:
        """Center of the rect along the category axis."""
        if orientation is Orientation.VERTICAL:
            return self.rect.cx
        return self.rect.cy

    def value_extent(self, orientation: Orientation) -> int:
        """Pixel extent of the rect along the value axis."""
        if orientation is Orientation.VERTICAL:
            return self.rect.h
        return self.rect.w


@dataclass(frozen=True)
class ValueMap:
    alpha: float                 # value units per pixel, > 0
    axis_value_at_origin: float  # value at the axis line
    tick_count: int
    signed_slope: float          # value change per +1 pixel coordinate


@dataclass(frozen=True)
class ChartTable:
    x_label: str
    y_label: str
    categories: tuple[str, ...]
    series: tuple[tuple[str, tuple[int, int, int], tuple[float | None, ...]], ...]


def whiten_legend(img: Raster, legends: LegendSet) -> Raster:
    """White out every legend name and swatch box."""
    out = img.arr.copy()
    for e in legends.entries:
        for box in (e.name_box, e.swatch_box):
            out[box.y:box.bottom, box.x:box.right] = 255
    return Raster(out)


def cluster_pixels(img: Raster, seeds, plot: BBox,
                   cap: int = CLUSTER_DISTANCE_CAP) -> list[BinaryImage]:
    """Assign plot pixels to the nearest seed color; one mask per seed.

    White pixels are eliminated first; pixels further than `cap` (squared
    RGB distance) from every seed stay unassigned.
    """
    h, w = img.height, img.width
    region = img.arr[plot.y:plot.bottom, plot.x:plot.right].astype(np.int64)
    non_white = ~np.all(region >= WHITE_MIN_CHANNEL, axis=2)
    seed_arr = np.asarray(seeds, dtype=np.int64)  # (k, 3)
    diffs = region[:, :, None, :] - seed_arr[None, None, :, :]
    d2 = np.sum(diffs * diffs, axis=3)            # (ph, pw, k)
    nearest = np.argmin(d2, axis=2)
    in_cap = np.min(d2, axis=2) <= cap
    valid = non_white & in_cap
    masks = []
    for k in range(len(seed_arr)):
        full = np.zeros((h, w), dtype=np.uint8)
        full[plot.y:plot.bottom, plot.x:plot.right] = \
            (valid & (nearest == k)).astype(np.uint8)
        masks.append(BinaryImage(full))
    return masks


_EIGHT_CONN = np.ones((3, 3), dtype=int)


def extract_bars(mask: BinaryImage, series: str,
                 min_area: int = MIN_BAR_AREA) -> list[BarRect]:
    """Bounding rectangles of the mask's 8-connected components.

    Components smaller than `min_area` pixels are speckle and dropped.
    """
    labels, n = ndimage.label(mask.bits, structure=_EIGHT_CONN)
    if n == 0:
        return []
    out = []
    slices = ndimage.find_objects(labels)
    counts = np.bincount(labels.ravel())
    for idx, sl in enumerate(slices, start=1):
        if counts[idx] < min_area:
            continue
        ys, xs = sl
        rect = BBox(xs.start, ys.start, xs.stop - xs.start, ys.stop - ys.start)
        out.append(BarRect(series, rect))
    out.sort(key=lambda b: (b.rect.y, b.rect.x))
    return out


def detect_orientation(bars, x_ticks: TickSet, y_ticks: TickSet) -> Orientation:
    """Vertical when the y axis is the numeric one, horizontal when the x
    axis is; both numeric falls back to the bars' median aspect."""
    x_numeric = x_ticks.numeric_count() >= 2
    y_numeric = y_ticks.numeric_count() >= 2
    if y_numeric and not x_numeric:
        return Orientation.VERTICAL
    if x_numeric and not y_numeric:
        return Orientation.HORIZONTAL
    if not x_numeric and not y_numeric:
        raise AmbiguousOrientation("no numeric ticks on either axis")
    heights = sorted(b.rect.h for b in bars)
    widths = sorted(b.rect.w for b in bars)
    if not bars:
        raise AmbiguousOrientation("both axes numeric and no bars to judge by")
    med_h = heights[len(heights) // 2]
    med_w = widths[len(widths) // 2]
    return Orientation.VERTICAL if med_h > med_w else Orientation.HORIZONTAL


def value_tick_ratio(ticks: TickSet, axis_origin_px: float) -> ValueMap:
    """Value units per pixel from the numeric tick set.

    alpha = mean consecutive tick value difference / mean consecutive pixel
    distance; the axis origin value comes from linear extrapolation from the
    nearest tick. For exactly equally spaced ticks this equals the
    least-squares slope of value against pixel position.
    """
    pairs = [(p, v) for (_, v), p in zip(ticks.ticks, ticks.pixel_positions)
             if v is not None]
    if len(pairs) < 2:
        raise NonMonotonicTicks("need at least two numeric ticks")
    pairs.sort(key=lambda pv: pv[0])
    positions = [p for p, _ in pairs]
    values = [v for _, v in pairs]
    dv = [b - a for a, b in zip(values, values[1:])]
    dp = [b - a for a, b in zip(positions, positions[1:])]
    if any(d == 0 for d in dp):
        raise ZeroPixelSpan("ticks share a pixel position")
    if not (all(d > 0 for d in dv) or all(d < 0 for d in dv)):
        raise NonMonotonicTicks(f"tick values not strictly monotonic: {values}")
    slope = (sum(dv) / len(dv)) / (sum(dp) / len(dp))
    # extrapolate from the tick nearest the axis line
    i = min(range(len(positions)), key=lambda j: abs(positions[j] - axis_origin_px))
    origin = values[i] + slope * (axis_origin_px - positions[i])
    return ValueMap(alpha=abs(slope), axis_value_at_origin=origin,
                    tick_count=len(pairs), signed_slope=slope)


def bar_value(bar: BarRect, vmap: ValueMap, orientation: Orientation) -> float:
    """Data value of one bar (or stacked segment): the segment's own pixel
    extent along the value axis times alpha, above the axis origin value."""
    return vmap.axis_value_at_origin + vmap.alpha * bar.value_extent(orientation)


def associate_categories(bars, category_ticks: TickSet, vmap: ValueMap,
                         orientation: Orientation):
    """Assign each bar to the nearest category tick and collect values.

    Returns {series: {category index: value}}; stacked segments of one
    series in one category sum.
    """
    anchors = category_ticks.pixel_positions
    rows: dict[str, dict[int, float]] = {}
    for bar in bars:
        a = bar.category_anchor(orientation)
        ci = min(range(len(anchors)), key=lambda i: abs(anchors[i] - a))
        v = bar_value(bar, vmap, orientation)
        cells = rows.setdefault(bar.series, {})
        cells[ci] = cells.get(ci, 0.0) + v
    return rows


def dominant_bar_color(img: Raster, masks) -> tuple[int, int, int]:
    """Most frequent pixel color across the given masks (no-legend path)."""
    counts: dict[tuple[int, int, int], int] = {}
    for mask in masks:
        ys, xs = np.nonzero(mask.bits)
        for color, cnt in zip(*np.unique(img.arr[ys, xs].reshape(-1, 3),
                                         axis=0, return_counts=True)):
            key = tuple(int(c) for c in color)
            counts[key] = counts.get(key, 0) + int(cnt)
    if not counts:
        return (0, 0, 0)
    return max(counts.items(), key=lambda kv: kv[1])[0]


def assemble_table(x_label, y_label, category_ticks: TickSet, series_info,
                   rows) -> ChartTable:
    """Build the final table: categories in tick order, series in legend order.

    `series_info` is an ordered list of (name, color); `rows` maps series
    name to {category index: value}. Raises EmptyChart when every cell is
    absent.
    """
    categories = tuple(b.text for b in category_ticks.boxes)
    series = []
    any_value = False
    for name, color in series_info:
        cells = rows.get(name, {})
        values = tuple(cells.get(i) for i in range(len(categories)))
        any_value = any_value or any(v is not None for v in values)
        series.append((name, tuple(color), values))
    if not any_value:
        raise EmptyChart("no bars extracted")
    return ChartTable(x_label=x_label or "", y_label=y_label or "",
                      categories=categories, series=tuple(series))
