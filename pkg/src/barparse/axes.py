"""Axis detection from max-run profiles.

The y-axis is the first (leftmost) column whose max-continuous ink run lands
within `band` of the global column maximum; the x-axis is the last (lowest)
such row. Both rules are literal first/last-match tie-breaks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateAxes, EmptyPlotRegion, NoAxisFound
from .raster import BBox, BinaryImage, RunProfile

DEFAULT_AXIS_BAND = 10


@dataclass(frozen=True)
class AxesGeometry:
    y_axis_col: int
    x_axis_row: int
    y_axis_extent: tuple[int, int]  # (top row, bottom row) of the detected run
    x_axis_extent: tuple[int, int]  # (left col, right col)


def _longest_run_span(line: np.ndarray) -> tuple[int, int]:
    """Start/end indices (inclusive) of the longest 1-run in a 0/1 vector."""
    best_len = 0
    best = (0, 0)
    run_start = None
    for i, v in enumerate(line):
        if v and run_start is None:
            run_start = i
        elif not v and run_start is not None:
            if i - run_start > best_len:
                best_len = i - run_start
                best = (run_start, i - 1)
            run_start = None
    if run_start is not None and len(line) - run_start > best_len:
        best = (run_start, len(line) - 1)
    return best


def detect_axes(profile: RunProfile, bin_img: BinaryImage,
                band: int = DEFAULT_AXIS_BAND) -> AxesGeometry:
    """Locate the y-axis column and x-axis row of a binarized chart."""
    col_max = profile.col_max
    row_max = profile.row_max
    maxcol = int(col_max.max(initial=0))
    maxrow = int(row_max.max(initial=0))
    if maxcol == 0 or maxrow == 0:
        raise NoAxisFound("blank image: no ink runs")

    col_hits = np.nonzero(col_max >= maxcol - band)[0]
    row_hits = np.nonzero(row_max >= maxrow - band)[0]
    y_axis_col = int(col_hits[0])    # first column in band
    x_axis_row = int(row_hits[-1])   # last row in band

    if y_axis_col == bin_img.width - 1 or x_axis_row == 0:
        raise DegenerateAxes(
            f"axes at col={y_axis_col}, row={x_axis_row} leave no interior")

    y_extent = _longest_run_span(bin_img.bits[:, y_axis_col])
    x_extent = _longest_run_span(bin_img.bits[x_axis_row, :])
    return AxesGeometry(y_axis_col, x_axis_row, y_extent, x_extent)


def plot_region(axes: AxesGeometry, img_dims: tuple[int, int]) -> BBox:
    """Interior rectangle strictly right of the y-axis and above the x-axis."""
    width, height = img_dims
    x = axes.y_axis_col + 1
    w = width - x
    h = axes.x_axis_row
    if w < 1 or h < 1:
        raise EmptyPlotRegion(f"no interior for axes {axes}")
    return BBox(x, 0, w, h)
