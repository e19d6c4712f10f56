#!/usr/bin/env python3
"""Render the bundled "real chart" fixtures with matplotlib.

Produces tests/data/realcharts/: ten PNG bar charts drawn with matplotlib's
default style (antialiased text, its own layout engine), each with a ground
truth annotation in the same JSON schema the synthetic generator emits and a
word-box OCR fixture measured from the rendered text artists.

Run from the repository root:

    python3 tools/make_real_fixtures.py

The files are committed, so this only needs re-running when the chart
definitions change. Matplotlib is a tooling dependency only; the package
itself never imports it.
"""

import json
import sys
from pathlib import Path

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np
from PIL import Image

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from barparse.raster import BBox  # noqa: E402
from barparse.synthgen import (GTBar, GTLabel, GTLegendEntry, GTText,  # noqa: E402
                               GroundTruth)
from barparse.ticklabel import parse_tick_text  # noqa: E402

OUT = Path(__file__).resolve().parents[1] / "tests" / "data" / "realcharts"

matplotlib.rcParams["axes.unicode_minus"] = False


def display_to_bbox(extent, height_px):
    """Matplotlib display coords (origin bottom-left) -> raster BBox."""
    x = int(round(extent.x0))
    y = int(round(height_px - extent.y1))
    w = max(1, int(round(extent.width)))
    h = max(1, int(round(extent.height)))
    return BBox(x, y, w, h)


def text_artist_box(artist, renderer, height_px):
    return display_to_bbox(artist.get_window_extent(renderer), height_px)


CHARTS = [
    {
        "id": "real_00",
        "variant": "vertical",
        "categories": ["north", "south", "east", "west"],
        "series": [("value", "C0", [12, 30, 21, 17])],
        "x_label": "region", "y_label": "sales",
        "legend": False,
    },
    {
        "id": "real_01",
        "variant": "vertical",
        "categories": ["2019", "2020", "2021"],
        "series": [("apples", "C0", [14, 22, 18]),
                   ("pears", "C1", [9, 13, 25])],
        "x_label": "year", "y_label": "tons",
        "legend": True,
    },
    {
        "id": "real_02",
        "variant": "horizontal",
        "categories": ["ant", "bee", "cat", "dog", "elk"],
        "series": [("value", "C2", [5, 11, 7, 16, 9])],
        "x_label": "count", "y_label": "animal",
        "legend": False,
    },
    {
        "id": "real_03",
        "variant": "horizontal",
        "categories": ["alpha", "beta", "gamma"],
        "series": [("old", "C0", [30, 45, 25]),
                   ("new", "C3", [42, 38, 50])],
        "x_label": "score", "y_label": "release",
        "legend": True,
    },
    {
        "id": "real_04",
        "variant": "stacked-vertical",
        "categories": ["q1", "q2", "q3", "q4"],
        "series": [("web", "C0", [10, 12, 9, 14]),
                   ("store", "C1", [7, 9, 11, 8]),
                   ("phone", "C2", [4, 3, 6, 5])],
        "x_label": "quarter", "y_label": "orders",
        "legend": True,
    },
    {
        "id": "real_05",
        "variant": "vertical",
        "categories": ["small", "medium", "large"],
        "series": [("train", "C0", [55, 62, 71]),
                   ("test", "C1", [48, 57, 64]),
                   ("holdout", "C2", [44, 52, 60])],
        "x_label": "model size", "y_label": "accuracy",
        "legend": True,
    },
    {
        "id": "real_06",
        "variant": "vertical",
        "categories": ["mon", "tue", "wed", "thu", "fri", "sat"],
        "series": [("value", "C4", [3, 7, 5, 9, 12, 8])],
        "x_label": "day", "y_label": "visits",
        "legend": False,
        "grid": True,
    },
    {
        "id": "real_07",
        "variant": "stacked-horizontal",
        "categories": ["red", "green", "blue"],
        "series": [("direct", "C0", [20, 15, 25]),
                   ("referred", "C3", [12, 18, 9])],
        "x_label": "sessions", "y_label": "team",
        "legend": True,
    },
    {
        "id": "real_08",
        "variant": "vertical",
        "categories": ["jan", "feb", "mar", "apr"],
        "series": [("cost", "C1", [120, 90, 150, 110]),
                   ("income", "C2", [140, 130, 125, 160])],
        "x_label": "month", "y_label": "dollars",
        "legend": True,
        "spine_width": 0.8,  # matplotlib default; the thinnest case
    },
    {
        "id": "real_09",
        "variant": "vertical",
        "categories": ["a", "b", "c", "d", "e"],
        "series": [("value", "C3", [400, 950, 700, 250, 600])],
        "x_label": "bucket", "y_label": "requests",
        "legend": False,
    },
]


def build_chart(cfg):
    horiz = "horizontal" in cfg["variant"]
    stacked = cfg["variant"].startswith("stacked")
    cats = cfg["categories"]
    n_cat = len(cats)
    n_ser = len(cfg["series"])
    idx = np.arange(n_cat)

    fig, ax = plt.subplots(figsize=(5.2, 3.6), dpi=100)
    lw = cfg.get("spine_width", 1.5)
    for spine in ax.spines.values():
        spine.set_linewidth(lw)
        spine.set_color("black")
    if cfg.get("grid"):
        ax.grid(True, axis="y", linewidth=0.5, alpha=0.4)
        ax.set_axisbelow(True)

    patches_by_series = {}
    if stacked:
        running = np.zeros(n_cat)
        for name, color, values in cfg["series"]:
            values = np.asarray(values, dtype=float)
            if horiz:
                bars = ax.barh(idx, values, 0.6, left=running, color=color,
                               label=name, antialiased=False,
                               edgecolor="none")
            else:
                bars = ax.bar(idx, values, 0.6, bottom=running, color=color,
                              label=name, antialiased=False, edgecolor="none")
            patches_by_series[name] = list(bars)
            running += values
        peak = float(running.max())
    else:
        width = 0.8 / n_ser
        for si, (name, color, values) in enumerate(cfg["series"]):
            offs = idx - 0.4 + width * (si + 0.5)
            if horiz:
                bars = ax.barh(offs, values, width * 0.9, color=color,
                               label=name, antialiased=False,
                               edgecolor="none")
            else:
                bars = ax.bar(offs, values, width * 0.9, color=color,
                              label=name, antialiased=False, edgecolor="none")
            patches_by_series[name] = list(bars)
        peak = float(max(max(v) for _, _, v in cfg["series"]))

    headroom = 1.35 if cfg["legend"] else 1.1
    if horiz:
        ax.set_yticks(idx, cats)
        ax.set_xlim(0, peak * headroom)
        ax.set_xlabel(cfg["x_label"])
        ax.set_ylabel(cfg["y_label"])
    else:
        ax.set_xticks(idx, cats)
        ax.set_ylim(0, peak * headroom)
        ax.set_xlabel(cfg["x_label"])
        ax.set_ylabel(cfg["y_label"])
    legend = ax.legend(loc="upper right", frameon=False) if cfg["legend"] \
        else None
    fig.tight_layout()
    fig.canvas.draw()
    return fig, ax, legend, patches_by_series


def annotate(cfg, fig, ax, legend, patches_by_series):
    horiz = "horizontal" in cfg["variant"]
    renderer = fig.canvas.get_renderer()
    buf = np.asarray(fig.canvas.buffer_rgba())
    H = buf.shape[0]

    ax_extent = ax.get_window_extent(renderer)
    y_axis_col = int(round(ax_extent.x0))
    x_axis_row = int(round(H - ax_extent.y0)) - 1
    y_axis_extent = (int(round(H - ax_extent.y1)), x_axis_row)
    x_axis_extent = (y_axis_col, int(round(ax_extent.x1)))

    def gt_text(artist):
        box = text_artist_box(artist, renderer, H)
        text = artist.get_text()
        return GTText(text, box, parse_tick_text(text))

    x_tick_artists = [t for t in ax.get_xticklabels() if t.get_text()]
    y_tick_artists = [t for t in ax.get_yticklabels() if t.get_text()]
    x_ticks = tuple(gt_text(t) for t in x_tick_artists)
    y_ticks = tuple(gt_text(t) for t in y_tick_artists)

    x_label = GTLabel(cfg["x_label"],
                      (text_artist_box(ax.xaxis.label, renderer, H),))
    y_label = GTLabel(cfg["y_label"],
                      (text_artist_box(ax.yaxis.label, renderer, H),))

    legend_entries = []
    if legend is not None:
        handles = getattr(legend, "legend_handles", None) or \
            legend.legendHandles
        for handle, text in zip(handles, legend.get_texts()):
            rgba = handle.get_facecolor()
            color = tuple(int(round(255 * c)) for c in rgba[:3])
            legend_entries.append(GTLegendEntry(
                name=text.get_text(),
                color=color,
                name_box=text_artist_box(text, renderer, H),
                swatch_box=display_to_bbox(
                    handle.get_window_extent(renderer), H),
            ))

    bars = []
    for name, _, values in cfg["series"]:
        for patch, cat, v in zip(patches_by_series[name],
                                 cfg["categories"], values):
            bars.append(GTBar(series=name, category=cat, value=float(v),
                              rect=display_to_bbox(
                                  patch.get_window_extent(renderer), H)))

    if horiz:
        origin = ax.transData.transform((0, 0))[0]
        unit = ax.transData.transform((1, 0))[0]
    else:
        origin = ax.transData.transform((0, 0))[1]
        unit = ax.transData.transform((0, 1))[1]
    alpha = 1.0 / abs(unit - origin)

    text_artists = x_tick_artists + y_tick_artists + \
        [ax.xaxis.label, ax.yaxis.label] + \
        (list(legend.get_texts()) if legend else [])
    text_boxes = tuple(gt_text(t) for t in text_artists)

    truth = GroundTruth(
        variant=cfg["variant"],
        y_axis_col=y_axis_col,
        x_axis_row=x_axis_row,
        y_axis_extent=y_axis_extent,
        x_axis_extent=x_axis_extent,
        x_ticks=x_ticks,
        y_ticks=y_ticks,
        x_label=x_label,
        y_label=y_label,
        legend=tuple(legend_entries),
        bars=tuple(bars),
        text_boxes=text_boxes,
        alpha=alpha,
        categories=tuple(cfg["categories"]),
    )
    fixture = [{"text": t.text, "bbox": t.bbox.as_list(), "confidence": 1.0}
               for t in text_boxes]
    png = Image.fromarray(buf[:, :, :3].copy())
    return png, truth, fixture


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    entries = []
    for cfg in CHARTS:
        fig, ax, legend, patches = build_chart(cfg)
        png, truth, fixture = annotate(cfg, fig, ax, legend, patches)
        plt.close(fig)
        image_id = cfg["id"]
        png.save(OUT / f"{image_id}.png")
        (OUT / f"{image_id}.truth.json").write_text(
            json.dumps(truth.to_dict()) + "\n", encoding="utf-8")
        (OUT / f"{image_id}.ocr.json").write_text(
            json.dumps({"images": {image_id: fixture}}) + "\n",
            encoding="utf-8")
        entries.append({"id": image_id, "variant": cfg["variant"],
                        "png": f"{image_id}.png",
                        "truth": f"{image_id}.truth.json",
                        "ocr": f"{image_id}.ocr.json"})
        print(f"wrote {image_id}")
    (OUT / "manifest.json").write_text(
        json.dumps({"count": len(entries), "entries": entries}, indent=2)
        + "\n", encoding="utf-8")
    print(OUT / "manifest.json")


if __name__ == "__main__":
    main()
