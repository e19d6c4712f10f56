"""Tick and axis-label detection via sweeping lines, plus tick value parsing.

X-tick candidates sit below the x-axis; y-tick candidates sit left of the
y-axis (standard layout: tick text is outside the plot). A sweep line moves
away from the axis one pixel at a time; the position crossing the most text
boxes marks the tick band, ties broken by the position closest to the axis.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

from .axes import AxesGeometry
from .errors import EmptyCandidates, TooFewTicks
from .ocr import TextBox


class Axis(Enum):
    X = "x"
    Y = "y"


@dataclass(frozen=True)
class TickSet:
    axis: Axis
    ticks: tuple[tuple[TextBox, float | None], ...]
    pixel_positions: tuple[float, ...]  # x-center for X ticks, y-center for Y

    def __post_init__(self):
        pos = self.pixel_positions
        if len(pos) != len(self.ticks):
            raise ValueError("positions/ticks length mismatch")
        if any(b >= a for a, b in zip(pos[1:], pos)):
            raise ValueError("tick pixel positions must be strictly increasing")

    @property
    def boxes(self) -> tuple[TextBox, ...]:
        return tuple(t[0] for t in self.ticks)

    @property
    def values(self) -> tuple[float | None, ...]:
        return tuple(t[1] for t in self.ticks)

    def numeric_count(self) -> int:
        return sum(1 for _, v in self.ticks if v is not None)


@dataclass(frozen=True)
class AxisLabel:
    axis: Axis
    text: str
    boxes: tuple[TextBox, ...]


def filter_candidates(boxes, axes: AxesGeometry):
    """Split OCR boxes into x-tick candidates (below the x-axis) and y-tick
    candidates (left of the y-axis); strict inequality on both boundaries."""
    x_candidates = [b for b in boxes if b.bbox.cy > axes.x_axis_row]
    y_candidates = [b for b in boxes if b.bbox.cx < axes.y_axis_col]
    return x_candidates, y_candidates


def _interval(box, horizontal_sweep: bool) -> tuple[int, int]:
    # Pixel rows (or columns) covered by the box, inclusive.
    if horizontal_sweep:
        return box.bbox.y, box.bbox.y + box.bbox.h - 1
    return box.bbox.x, box.bbox.x + box.bbox.w - 1


def sweep_detect(candidates, start: int, end: int, horizontal: bool):
    """Sweep an axis-parallel line from `start` towards `end` (inclusive,
    integer steps) and return the boxes crossed at the position with the
    maximum crossing count. Ties go to the position closest to `start`.

    `horizontal` selects a horizontal line (sweeping over rows); otherwise a
    vertical line sweeping over columns.
    """
    if not candidates:
        raise EmptyCandidates("no boxes to sweep over")
    step = 1 if end >= start else -1
    intervals = [_interval(b, horizontal) for b in candidates]
    best_count = 0
    best_boxes: list = []
    for pos in range(start, end + step, step):
        hit = [b for b, (lo, hi) in zip(candidates, intervals) if lo <= pos <= hi]
        if len(hit) > best_count:
            best_count = len(hit)
            best_boxes = hit
    return best_boxes


_NUM_RE = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$")


def parse_tick_text(text: str) -> float | None:
    """Numeric value of a tick string, or None for category ticks.

    Thousands separators, a trailing '%' and surrounding whitespace are
    stripped; scientific notation is accepted. Locale independent.
    """
    s = text.strip()
    if s.endswith("%"):
        s = s[:-1].strip()
    s = s.replace(",", "")
    if _NUM_RE.match(s):
        return float(s)
    return None


def _make_tickset(axis: Axis, boxes, values=None) -> TickSet:
    if axis is Axis.X:
        keyed = sorted(boxes, key=lambda b: b.bbox.cx)
        positions = tuple(b.bbox.cx for b in keyed)
    else:
        keyed = sorted(boxes, key=lambda b: b.bbox.cy)
        positions = tuple(b.bbox.cy for b in keyed)
    if values is None:
        ticks = tuple((b, None) for b in keyed)
    else:
        lookup = dict(values)
        ticks = tuple((b, lookup[id(b)]) for b in keyed)
    return TickSet(axis, ticks, positions)


def detect_ticks(boxes, axes: AxesGeometry,
                 img_dims: tuple[int, int]) -> tuple[TickSet, TickSet]:
    """Locate the x- and y-tick text bands below/left of the axes.

    Raises TooFewTicks when neither band holds at least two numeric-looking
    ticks, since no value mapping is possible downstream.
    """
    width, height = img_dims
    x_candidates, y_candidates = filter_candidates(boxes, axes)
    x_boxes = []
    if x_candidates and axes.x_axis_row + 1 <= height - 1:
        x_boxes = sweep_detect(x_candidates, axes.x_axis_row + 1, height - 1,
                               horizontal=True)
    y_boxes = []
    if y_candidates and axes.y_axis_col - 1 >= 0:
        y_boxes = sweep_detect(y_candidates, axes.y_axis_col - 1, 0,
                               horizontal=False)
    x_ticks = _make_tickset(Axis.X, x_boxes)
    y_ticks = _make_tickset(Axis.Y, y_boxes)

    def numeric_count(ts):
        return sum(1 for b in ts.boxes if parse_tick_text(b.text) is not None)

    if max(numeric_count(x_ticks), numeric_count(y_ticks)) < 2:
        raise TooFewTicks("no axis has two or more numeric ticks")
    return x_ticks, y_ticks


def parse_tick_values(ticks: TickSet) -> TickSet:
    """Attach parsed numeric values to every tick whose text is numeric."""
    parsed = tuple((b, parse_tick_text(b.text)) for b, _ in ticks.ticks)
    return TickSet(ticks.axis, parsed, ticks.pixel_positions)


def detect_axis_labels(boxes, axes: AxesGeometry, x_ticks: TickSet,
                       y_ticks: TickSet, img_dims: tuple[int, int]
                       ) -> tuple[AxisLabel | None, AxisLabel | None]:
    """Find the (optional) axis label bands beyond the tick text.

    The x label is the densest horizontal band strictly below the lowest
    x-tick box; the y label is the densest vertical band strictly left of the
    leftmost y-tick box (its stacked words are joined top-to-bottom).
    """
    width, height = img_dims
    x_label = None
    if x_ticks.ticks:
        lowest = max(b.bbox.bottom - 1 for b in x_ticks.boxes)
        cands = [b for b in boxes if b.bbox.y > lowest]
        if cands and lowest + 1 <= height - 1:
            band = sweep_detect(cands, lowest + 1, height - 1, horizontal=True)
            if band:
                words = sorted(band, key=lambda b: b.bbox.x)
                x_label = AxisLabel(Axis.X, " ".join(w.text for w in words),
                                    tuple(words))
    y_label = None
    if y_ticks.ticks:
        leftmost = min(b.bbox.x for b in y_ticks.boxes)
        cands = [b for b in boxes if b.bbox.right - 1 < leftmost]
        if cands and leftmost - 1 >= 0:
            band = sweep_detect(cands, leftmost - 1, 0, horizontal=False)
            if band:
                words = sorted(band, key=lambda b: b.bbox.y)
                y_label = AxisLabel(Axis.Y, " ".join(w.text for w in words),
                                    tuple(words))
    return x_label, y_label
