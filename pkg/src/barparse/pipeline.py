"""End-to-end extraction: image in, structured table plus detections out."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import axes as axes_mod
from . import bars as bars_mod
from . import legend as legend_mod
from . import ticklabel
from .axes import AxesGeometry
from .bars import ChartTable, Orientation
from .errors import EmptyChart, NoLegendFound
from .legend import LegendSet
from .ocr import recognize
from .raster import Raster, binarize, run_profiles
from .ticklabel import AxisLabel, TickSet


@dataclass(frozen=True)
class PipelineConfig:
    binarize_threshold: int = 128
    axis_band: int = 10
    merge_gap: int = 10
    color_tolerance: int = 5
    min_bar_area: int = bars_mod.MIN_BAR_AREA
    cluster_cap: int = bars_mod.CLUSTER_DISTANCE_CAP


@dataclass
class ParseResult:
    axes: AxesGeometry
    x_ticks: TickSet
    y_ticks: TickSet
    x_label: AxisLabel | None
    y_label: AxisLabel | None
    legend: LegendSet | None
    orientation: Orientation
    table: ChartTable
    ocr_boxes: tuple = ()
    warnings: list[str] = field(default_factory=list)


def _dominant_plot_color(img: Raster, plot) -> tuple[int, int, int]:
    """Most frequent saturated color in the plot (no-legend fallback seed)."""
    region = img.arr[plot.y:plot.bottom, plot.x:plot.right].reshape(-1, 3)
    keep = ~np.all(region >= bars_mod.WHITE_MIN_CHANNEL, axis=1)
    keep &= np.sum(region.astype(np.int64) ** 2, axis=1) > bars_mod.CLUSTER_DISTANCE_CAP
    region = region[keep]
    if len(region) == 0:
        raise EmptyChart("no colored pixels in the plot region")
    colors, counts = np.unique(region, axis=0, return_counts=True)
    best = colors[np.argmax(counts)]
    return tuple(int(c) for c in best)


def parse_chart(img: Raster, provider, image_id: str = "",
                config: PipelineConfig = PipelineConfig()) -> ParseResult:
    """Run the full extraction pipeline on one chart image."""
    warnings: list[str] = []
    bin_img = binarize(img, config.binarize_threshold)
    profile = run_profiles(bin_img)
    axes = axes_mod.detect_axes(profile, bin_img, band=config.axis_band)
    plot = axes_mod.plot_region(axes, (img.width, img.height))

    ocr = recognize(provider, img, image_id)
    dims = (img.width, img.height)
    x_ticks, y_ticks = ticklabel.detect_ticks(ocr.boxes, axes, dims)
    x_ticks = ticklabel.parse_tick_values(x_ticks)
    y_ticks = ticklabel.parse_tick_values(y_ticks)
    x_label, y_label = ticklabel.detect_axis_labels(
        ocr.boxes, axes, x_ticks, y_ticks, dims)

    tick_boxes = list(x_ticks.boxes) + list(y_ticks.boxes)
    label_boxes = []
    for lab in (x_label, y_label):
        if lab is not None:
            label_boxes.extend(lab.boxes)

    legend = None
    try:
        legend = legend_mod.detect_legend(
            img, ocr.boxes, tick_boxes, label_boxes, plot,
            gap=config.merge_gap, tolerance=config.color_tolerance)
    except NoLegendFound as exc:
        warnings.append(f"NoLegendFound {exc}")

    if legend is not None:
        work = bars_mod.whiten_legend(img, legend)
        series_info = [(e.name, e.color) for e in legend.entries]
    else:
        work = img
        series_info = [("value", _dominant_plot_color(img, plot))]

    seeds = [color for _, color in series_info]
    masks = bars_mod.cluster_pixels(work, seeds, plot, cap=config.cluster_cap)
    all_bars = []
    for (name, _), mask in zip(series_info, masks):
        all_bars.extend(bars_mod.extract_bars(mask, name,
                                              min_area=config.min_bar_area))
    if not all_bars:
        raise EmptyChart("no bars extracted")

    orientation = bars_mod.detect_orientation(all_bars, x_ticks, y_ticks)
    if orientation is Orientation.VERTICAL:
        value_ticks, category_ticks = y_ticks, x_ticks
        origin_px = float(axes.x_axis_row)
        category_label = x_label.text if x_label else ""
        value_label = y_label.text if y_label else ""
    else:
        value_ticks, category_ticks = x_ticks, y_ticks
        origin_px = float(axes.y_axis_col)
        category_label = y_label.text if y_label else ""
        value_label = x_label.text if x_label else ""

    vmap = bars_mod.value_tick_ratio(value_ticks, origin_px)
    rows = bars_mod.associate_categories(all_bars, category_ticks, vmap,
                                         orientation)
    table = bars_mod.assemble_table(category_label, value_label,
                                    category_ticks, series_info, rows)
    return ParseResult(axes=axes, x_ticks=x_ticks, y_ticks=y_ticks,
                       x_label=x_label, y_label=y_label, legend=legend,
                       orientation=orientation, table=table,
                       ocr_boxes=ocr.boxes, warnings=warnings)


def _textbox_to_dict(tb):
    return {"text": tb.text, "bbox": tb.bbox.as_list(),
            "confidence": tb.confidence}


def _textbox_from_dict(d):
    from .ocr import TextBox
    from .raster import BBox
    return TextBox(d["text"], BBox(*d["bbox"]), d.get("confidence", 1.0))


def _tickset_to_dict(ts):
    return {"axis": ts.axis.value,
            "ticks": [{**_textbox_to_dict(b), "value": v} for b, v in ts.ticks]}


def _tickset_from_dict(d):
    from .ticklabel import Axis, TickSet
    axis = Axis(d["axis"])
    boxes = [(_textbox_from_dict(t), t["value"]) for t in d["ticks"]]
    if axis is Axis.X:
        positions = tuple(b.bbox.cx for b, _ in boxes)
    else:
        positions = tuple(b.bbox.cy for b, _ in boxes)
    return TickSet(axis, tuple(boxes), positions)


def result_to_dict(res: ParseResult) -> dict:
    """JSON-ready detection dump, used by the eval command's --pred files."""
    from .output import to_json
    import json
    doc = {
        "axes": {"y_axis_col": res.axes.y_axis_col,
                 "x_axis_row": res.axes.x_axis_row,
                 "y_axis_extent": list(res.axes.y_axis_extent),
                 "x_axis_extent": list(res.axes.x_axis_extent)},
        "x_ticks": _tickset_to_dict(res.x_ticks),
        "y_ticks": _tickset_to_dict(res.y_ticks),
        "x_label": None if res.x_label is None else {
            "text": res.x_label.text,
            "boxes": [_textbox_to_dict(b) for b in res.x_label.boxes]},
        "y_label": None if res.y_label is None else {
            "text": res.y_label.text,
            "boxes": [_textbox_to_dict(b) for b in res.y_label.boxes]},
        "legend": None if res.legend is None else {
            "orientation": res.legend.orientation.value,
            "entries": [{"name": e.name, "color": list(e.color),
                         "name_box": e.name_box.as_list(),
                         "swatch_box": e.swatch_box.as_list()}
                        for e in res.legend.entries]},
        "orientation": res.orientation.value,
        "table": json.loads(to_json(res.table).text),
        "ocr_boxes": [_textbox_to_dict(b) for b in res.ocr_boxes],
        "warnings": list(res.warnings),
    }
    return doc


def result_from_dict(doc: dict) -> ParseResult:
    from .legend import LegendEntry, LegendOrientation, LegendSet
    from .output import from_json
    from .raster import BBox
    from .ticklabel import AxisLabel, Axis
    import json

    a = doc["axes"]
    axes = AxesGeometry(a["y_axis_col"], a["x_axis_row"],
                        tuple(a["y_axis_extent"]), tuple(a["x_axis_extent"]))

    def label(d, axis):
        if d is None:
            return None
        return AxisLabel(axis, d["text"],
                         tuple(_textbox_from_dict(b) for b in d["boxes"]))

    legend = None
    if doc["legend"] is not None:
        legend = LegendSet(
            tuple(LegendEntry(e["name"], BBox(*e["name_box"]),
                              BBox(*e["swatch_box"]), tuple(e["color"]))
                  for e in doc["legend"]["entries"]),
            LegendOrientation(doc["legend"]["orientation"]))
    return ParseResult(
        axes=axes,
        x_ticks=_tickset_from_dict(doc["x_ticks"]),
        y_ticks=_tickset_from_dict(doc["y_ticks"]),
        x_label=label(doc["x_label"], Axis.X),
        y_label=label(doc["y_label"], Axis.Y),
        legend=legend,
        orientation=Orientation(doc["orientation"]),
        table=from_json(json.dumps(doc["table"])),
        ocr_boxes=tuple(_textbox_from_dict(b) for b in doc["ocr_boxes"]),
        warnings=list(doc["warnings"]),
    )
