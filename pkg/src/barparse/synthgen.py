"""Deterministic synthetic bar-chart renderer with exact ground truth.

Charts are rendered crisp (no anti-aliasing): 1px black axes, solid-color
bars, and block-glyph text where every character is a fixed-size dark
rectangle. The rendered words carry no readable glyphs; the accompanying
OCR fixture holds the true strings, so the pipeline sees exactly what a
perfect OCR engine would report.

Fixed layout constants (all pixel units):

* characters are 6x10 blocks, words separated by 4px
* tick text sits 4px left of the y-axis / 3px below the x-axis
* axis labels sit 4px beyond the tick text band
* legend swatches are 12x12, 4px left of the entry name
* the bar band covers 60% of each category slot
* the top tick leaves 20px of headroom inside the plot
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np

from .errors import SpecTooLarge
from .raster import BBox, Raster

CHAR_W = 6
CHAR_H = 10
WORD_GAP = 4
TICK_GAP = 4          # tick text to axis line
X_TICK_DROP = 3       # rows between axis line and x tick text
LABEL_GAP = 4         # tick text band to axis label band
SWATCH = 12
SWATCH_NAME_GAP = 4
LEGEND_PITCH = 18     # row pitch of vertical (right-placed) legends
LEGEND_ENTRY_GAP = 34  # entry gap of horizontal legends; keeps the next
                       # entry's swatch outside the 30px swatch search strip
RIGHT_LEGEND_PLOT_GAP = 11
BAR_FRACTION = 0.6
VALUE_HEADROOM = 20
MIN_SLOT = 20
MIN_PX_PER_STEP = 14

INK = (0, 0, 0)

VARIANTS = ("vertical", "horizontal", "stacked-vertical", "stacked-horizontal")

# Pairwise squared RGB distances all exceed the cluster assignment cap
# (3*60^2) and every color is far from both black ink and white background.
PALETTE = (
    (31, 119, 180),
    (255, 127, 14),
    (44, 160, 44),
    (200, 20, 60),
    (148, 103, 189),
)

CATEGORY_POOL = ("alpha", "beta", "gamma", "delta", "omega", "sigma",
                 "kappa", "theta")
SERIES_POOL = ("baseline", "tuned", "control", "fast variant", "full model",
               "pruned", "wide net", "deep net")
LABEL_POOL = ("score", "count", "total items", "accuracy", "time", "cost",
              "group", "phase", "run size")


@dataclass(frozen=True)
class ChartSpec:
    variant: str
    categories: tuple[str, ...]
    series: tuple[tuple[str, tuple[int, int, int], tuple[float, ...]], ...]
    canvas: tuple[int, int]
    tick_step: float
    legend_placement: str  # "right" | "top"
    x_label: str | None = None  # physical: text below the x axis
    y_label: str | None = None  # physical: text left of the y axis
    rng_seed: int = 0

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.legend_placement not in ("right", "top"):
            raise ValueError(f"bad legend placement {self.legend_placement!r}")
        for name, color, values in self.series:
            if len(values) != len(self.categories):
                raise ValueError(f"series {name!r} has wrong value count")
            if any(not math.isfinite(v) or v < 0 for v in values):
                raise ValueError(f"series {name!r} has bad values")
        colors = [c for _, c, _ in self.series]
        for i in range(len(colors)):
            for j in range(i + 1, len(colors)):
                d2 = sum((a - b) ** 2 for a, b in zip(colors[i], colors[j]))
                if d2 <= 3 * 60 * 60:
                    raise ValueError("series colors too close to separate")


@dataclass(frozen=True)
class GTText:
    text: str
    bbox: BBox
    value: float | None = None


@dataclass(frozen=True)
class GTLabel:
    text: str
    boxes: tuple[BBox, ...]


@dataclass(frozen=True)
class GTLegendEntry:
    name: str
    color: tuple[int, int, int]
    name_box: BBox
    swatch_box: BBox


@dataclass(frozen=True)
class GTBar:
    series: str
    category: str
    value: float
    rect: BBox


@dataclass(frozen=True)
class GroundTruth:
    variant: str
    y_axis_col: int
    x_axis_row: int
    y_axis_extent: tuple[int, int]
    x_axis_extent: tuple[int, int]
    x_ticks: tuple[GTText, ...]
    y_ticks: tuple[GTText, ...]
    x_label: GTLabel | None
    y_label: GTLabel | None
    legend: tuple[GTLegendEntry, ...]
    bars: tuple[GTBar, ...]
    text_boxes: tuple[GTText, ...]
    alpha: float
    categories: tuple[str, ...]

    def value_of(self, series: str, category: str) -> float | None:
        total = None
        for bar in self.bars:
            if bar.series == series and bar.category == category:
                total = (total or 0.0) + bar.value
        return total

    def to_dict(self) -> dict:
        def tick(t):
            return {"text": t.text, "bbox": t.bbox.as_list(), "value": t.value}

        def label(l):
            if l is None:
                return None
            return {"text": l.text, "boxes": [b.as_list() for b in l.boxes]}

        return {
            "variant": self.variant,
            "y_axis_col": self.y_axis_col,
            "x_axis_row": self.x_axis_row,
            "y_axis_extent": list(self.y_axis_extent),
            "x_axis_extent": list(self.x_axis_extent),
            "x_ticks": [tick(t) for t in self.x_ticks],
            "y_ticks": [tick(t) for t in self.y_ticks],
            "x_label": label(self.x_label),
            "y_label": label(self.y_label),
            "legend": [
                {"name": e.name, "color": list(e.color),
                 "name_box": e.name_box.as_list(),
                 "swatch_box": e.swatch_box.as_list()}
                for e in self.legend
            ],
            "bars": [
                {"series": b.series, "category": b.category,
                 "value": b.value, "rect": b.rect.as_list()}
                for b in self.bars
            ],
            "text_boxes": [tick(t) for t in self.text_boxes],
            "alpha": self.alpha,
            "categories": list(self.categories),
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "GroundTruth":
        def tick(d):
            return GTText(d["text"], BBox(*d["bbox"]), d.get("value"))

        def label(d):
            if d is None:
                return None
            return GTLabel(d["text"], tuple(BBox(*b) for b in d["boxes"]))

        return cls(
            variant=doc["variant"],
            y_axis_col=doc["y_axis_col"],
            x_axis_row=doc["x_axis_row"],
            y_axis_extent=tuple(doc["y_axis_extent"]),
            x_axis_extent=tuple(doc["x_axis_extent"]),
            x_ticks=tuple(tick(t) for t in doc["x_ticks"]),
            y_ticks=tuple(tick(t) for t in doc["y_ticks"]),
            x_label=label(doc["x_label"]),
            y_label=label(doc["y_label"]),
            legend=tuple(
                GTLegendEntry(e["name"], tuple(e["color"]),
                              BBox(*e["name_box"]), BBox(*e["swatch_box"]))
                for e in doc["legend"]
            ),
            bars=tuple(
                GTBar(b["series"], b["category"], b["value"], BBox(*b["rect"]))
                for b in doc["bars"]
            ),
            text_boxes=tuple(tick(t) for t in doc["text_boxes"]),
            alpha=doc["alpha"],
            categories=tuple(doc["categories"]),
        )


def _round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


def _text_w(text: str) -> int:
    words = text.split()
    return sum(len(w) * CHAR_W for w in words) + WORD_GAP * (len(words) - 1)


def _fmt_value(v: float) -> str:
    return str(int(v)) if float(v).is_integer() else f"{v:g}"


def _draw_words(canvas, text: str, x: int, y: int):
    """Render words as dark blocks left to right; returns their boxes."""
    out = []
    cx = x
    for word in text.split():
        w = len(word) * CHAR_W
        canvas[y:y + CHAR_H, cx:cx + w] = INK
        out.append((word, BBox(cx, y, w, CHAR_H)))
        cx += w + WORD_GAP
    return out


def _draw_words_stacked(canvas, text: str, x: int, y: int):
    """Render words as dark blocks top to bottom (rotated-label stand-in)."""
    out = []
    cy = y
    for word in text.split():
        w = len(word) * CHAR_W
        canvas[cy:cy + CHAR_H, x:x + w] = INK
        out.append((word, BBox(x, cy, w, CHAR_H)))
        cy += CHAR_H + WORD_GAP
    return out


def _tick_count(spec: ChartSpec) -> tuple[int, float]:
    stacked = spec.variant.startswith("stacked")
    vmax = 0.0
    for ci in range(len(spec.categories)):
        vals = [values[ci] for _, _, values in spec.series]
        vmax = max(vmax, sum(vals) if stacked else max(vals))
    k = max(2, math.ceil(vmax / spec.tick_step - 1e-9))
    return k, vmax


def render(spec: ChartSpec) -> tuple[Raster, GroundTruth, list[dict]]:
    """Render a spec to (raster, ground truth, OCR fixture entry)."""
    width, height = spec.canvas
    horiz = "horizontal" in spec.variant
    stacked = spec.variant.startswith("stacked")
    n_cat = len(spec.categories)
    n_ser = len(spec.series)
    k, _ = _tick_count(spec)
    step = spec.tick_step
    tick_texts = [_fmt_value(i * step) for i in range(k + 1)]
    tick_w = max(_text_w(t) for t in tick_texts)

    x_label_words = spec.x_label.split() if spec.x_label else []
    y_label_words = spec.y_label.split() if spec.y_label else []
    ylw = max((len(w) * CHAR_W for w in y_label_words), default=0)

    # left margin: stacked y-label words, then the left-of-axis text column
    left_text_w = tick_w if not horiz else max(_text_w(c) for c in spec.categories)
    y_axis_col = (2 + ylw + 6 if y_label_words else 2) + left_text_w + TICK_GAP

    bottom = X_TICK_DROP + CHAR_H + 4
    if x_label_words:
        bottom += LABEL_GAP + CHAR_H
    x_axis_row = height - 1 - bottom

    # legend geometry
    name_ws = [_text_w(name) for name, _, _ in spec.series]
    entry_ws = [SWATCH + SWATCH_NAME_GAP + w for w in name_ws]
    if spec.legend_placement == "right":
        legend_w = max(entry_ws)
        legend_x = width - 4 - legend_w
        plot_right = legend_x - RIGHT_LEGEND_PLOT_GAP
        plot_top = 10
        legend_top = plot_top + 4
        if legend_top + (n_ser - 1) * LEGEND_PITCH + SWATCH >= x_axis_row - 4:
            raise SpecTooLarge("right legend does not fit above the x axis")
    else:
        plot_right = width - 11
        plot_top = 4 + SWATCH + 6
        legend_total = sum(entry_ws) + LEGEND_ENTRY_GAP * (n_ser - 1)
        legend_x = y_axis_col + 1 + (plot_right - y_axis_col - legend_total) // 2
        if legend_x <= y_axis_col or legend_x + legend_total > plot_right:
            raise SpecTooLarge("top legend wider than the plot")

    if plot_right - y_axis_col < 40 or x_axis_row - plot_top < 40:
        raise SpecTooLarge("plot interior too small")

    # value-axis scale
    if horiz:
        avail = plot_right - y_axis_col - VALUE_HEADROOM
        min_px = max(MIN_PX_PER_STEP, tick_w + 6)
    else:
        avail = x_axis_row - plot_top - VALUE_HEADROOM
        min_px = MIN_PX_PER_STEP
    px_per_step = avail // k
    if px_per_step < min_px:
        raise SpecTooLarge("tick spacing too tight")
    alpha = step / px_per_step

    # category slots
    if horiz:
        span = x_axis_row - plot_top
    else:
        span = plot_right - y_axis_col
    slot = span // n_cat
    cat_text_need = 0 if horiz else max(_text_w(c) for c in spec.categories) + 4
    if slot < max(MIN_SLOT, cat_text_need):
        raise SpecTooLarge("category slots too narrow")
    band = max(8, int(slot * BAR_FRACTION))
    if stacked or n_ser == 1:
        sub = band
    else:
        sub = band // n_ser
        if sub < 6:
            raise SpecTooLarge("grouped sub-bars too thin")
        band = sub * n_ser

    canvas = np.full((height, width, 3), 255, dtype=np.uint8)
    text_boxes: list[GTText] = []
    fixture: list[dict] = []

    def record(words):
        for text, box in words:
            text_boxes.append(GTText(text, box))
            fixture.append({"text": text, "bbox": box.as_list(),
                            "confidence": 1.0})

    # axes
    canvas[plot_top:x_axis_row + 1, y_axis_col] = INK
    canvas[x_axis_row, y_axis_col:plot_right + 1] = INK
    y_axis_extent = (plot_top, x_axis_row)
    x_axis_extent = (y_axis_col, plot_right)

    # value ticks
    value_ticks: list[GTText] = []
    for i, text in enumerate(tick_texts):
        w = _text_w(text)
        if horiz:
            col = y_axis_col + i * px_per_step
            box = BBox(col - w // 2, x_axis_row + X_TICK_DROP, w, CHAR_H)
            canvas[box.y:box.bottom, box.x:box.right] = INK
        else:
            row = x_axis_row - i * px_per_step
            box = BBox(y_axis_col - TICK_GAP - w, row - CHAR_H // 2, w, CHAR_H)
            canvas[box.y:box.bottom, box.x:box.right] = INK
        value_ticks.append(GTText(text, box, float(i) * step))
        record([(text, box)])

    # category slots + ticks
    cat_centers = []
    cat_ticks: list[GTText] = []
    for ci, cat in enumerate(spec.categories):
        w = _text_w(cat)
        if horiz:
            center = plot_top + ci * slot + slot // 2
            box = BBox(y_axis_col - TICK_GAP - w, center - CHAR_H // 2, w, CHAR_H)
        else:
            center = y_axis_col + 1 + ci * slot + slot // 2
            box = BBox(center - w // 2, x_axis_row + X_TICK_DROP, w, CHAR_H)
        canvas[box.y:box.bottom, box.x:box.right] = INK
        cat_centers.append(center)
        cat_ticks.append(GTText(cat, box))
        record([(cat, box)])

    # axis labels
    x_label_gt = None
    if x_label_words:
        total = _text_w(spec.x_label)
        lx = y_axis_col + 1 + (plot_right - y_axis_col - total) // 2
        ly = x_axis_row + X_TICK_DROP + CHAR_H + LABEL_GAP
        words = _draw_words(canvas, spec.x_label, lx, ly)
        record(words)
        x_label_gt = GTLabel(spec.x_label, tuple(b for _, b in words))
    y_label_gt = None
    if y_label_words:
        total_h = len(y_label_words) * CHAR_H + WORD_GAP * (len(y_label_words) - 1)
        ly = max(plot_top, plot_top + (x_axis_row - plot_top - total_h) // 2)
        words = _draw_words_stacked(canvas, spec.y_label, 2, ly)
        record(words)
        y_label_gt = GTLabel(spec.y_label, tuple(b for _, b in words))

    # legend
    legend_entries: list[GTLegendEntry] = []
    if spec.legend_placement == "right":
        for si, (name, color, _) in enumerate(spec.series):
            ny = legend_top + si * LEGEND_PITCH
            sx, sy = legend_x, ny + (CHAR_H - SWATCH) // 2
            canvas[sy:sy + SWATCH, sx:sx + SWATCH] = color
            words = _draw_words(canvas, name,
                                legend_x + SWATCH + SWATCH_NAME_GAP, ny)
            record(words)
            name_box = words[0][1]
            for _, b in words[1:]:
                name_box = name_box.union(b)
            legend_entries.append(
                GTLegendEntry(name, color, name_box,
                              BBox(sx, sy, SWATCH, SWATCH)))
        legend_orientation = "vertical"
    else:
        cx = legend_x
        ny = 5
        for name, color, _ in spec.series:
            sy = ny + (CHAR_H - SWATCH) // 2
            canvas[sy:sy + SWATCH, cx:cx + SWATCH] = color
            words = _draw_words(canvas, name, cx + SWATCH + SWATCH_NAME_GAP, ny)
            record(words)
            name_box = words[0][1]
            for _, b in words[1:]:
                name_box = name_box.union(b)
            legend_entries.append(
                GTLegendEntry(name, color, name_box, BBox(cx, sy, SWATCH, SWATCH)))
            cx += SWATCH + SWATCH_NAME_GAP + _text_w(name) + LEGEND_ENTRY_GAP
        legend_orientation = "horizontal"

    # bars
    bars: list[GTBar] = []
    for ci, cat in enumerate(spec.categories):
        center = cat_centers[ci]
        cum = 0
        for si, (name, color, values) in enumerate(spec.series):
            extent = _round_half_up(values[ci] / alpha)
            if extent < 1:
                continue
            if horiz:
                y0 = center - band // 2 + (0 if stacked else si * sub)
                bh = sub
                x0 = y_axis_col + 1 + (cum if stacked else 0)
                rect = BBox(x0, y0, extent, bh)
            else:
                x0 = center - band // 2 + (0 if stacked else si * sub)
                y_bot = x_axis_row - (cum if stacked else 0)
                rect = BBox(x0, y_bot - extent, sub, extent)
            canvas[rect.y:rect.bottom, rect.x:rect.right] = color
            bars.append(GTBar(name, cat, values[ci], rect))
            if stacked:
                cum += extent

    if horiz:
        x_ticks, y_ticks = value_ticks, cat_ticks
    else:
        x_ticks, y_ticks = cat_ticks, value_ticks

    truth = GroundTruth(
        variant=spec.variant,
        y_axis_col=y_axis_col,
        x_axis_row=x_axis_row,
        y_axis_extent=y_axis_extent,
        x_axis_extent=x_axis_extent,
        x_ticks=tuple(x_ticks),
        y_ticks=tuple(y_ticks),
        x_label=x_label_gt,
        y_label=y_label_gt,
        legend=tuple(legend_entries),
        bars=tuple(bars),
        text_boxes=tuple(text_boxes),
        alpha=alpha,
        categories=spec.categories,
    )
    return Raster(canvas), truth, fixture


def perturb(img: Raster, k: int, seed: int = 0,
            antialias: bool = False) -> Raster:
    """Seeded bounded per-channel jitter (plus optional edge softening).

    Ground truth is unchanged: geometry stays put, only channel values move
    by at most +-k.
    """
    if k < 0 or k > 10:
        raise ValueError("jitter amplitude must be in [0, 10]")
    arr = img.arr.astype(np.int16)
    if antialias:
        # soften hard edges by averaging with the 4-neighborhood
        padded = np.pad(arr, ((1, 1), (1, 1), (0, 0)), mode="edge")
        blur = (4 * arr + padded[:-2, 1:-1] + padded[2:, 1:-1]
                + padded[1:-1, :-2] + padded[1:-1, 2:]) // 8
        arr = blur
    if k > 0:
        rng = np.random.default_rng(seed)
        arr = arr + rng.integers(-k, k + 1, size=arr.shape, dtype=np.int16)
    return Raster(np.clip(arr, 0, 255).astype(np.uint8))


def _random_spec(rng: random.Random, variant: str, index: int) -> ChartSpec:
    stacked = variant.startswith("stacked")
    n_ser = rng.randint(1, 5)
    n_cat = rng.randint(2, 8)
    categories = tuple(rng.sample(CATEGORY_POOL, n_cat))
    names = rng.sample(SERIES_POOL, n_ser)
    colors = rng.sample(PALETTE, n_ser)
    step = float(rng.choice((2, 5, 10, 20, 50)))
    k = rng.randint(3, 5)
    lo = 0.3 if stacked else 0.25
    raw = [[rng.uniform(lo, 1.0) for _ in range(n_cat)] for _ in range(n_ser)]
    combined = [sum(col) if stacked else max(col)
                for col in zip(*raw)]
    scale = k * step / max(combined)
    series = tuple(
        (name, color, tuple(u * scale for u in row))
        for name, color, row in zip(names, colors, raw)
    )
    placement = rng.choice(("right", "top"))
    x_label = " ".join(rng.sample(LABEL_POOL, 1)) if rng.random() < 0.9 else None
    y_label = " ".join(rng.sample(LABEL_POOL, 1)) if rng.random() < 0.9 else None
    base_w = 340 + rng.choice((0, 20, 40, 60))
    base_h = 240 + rng.choice((0, 20, 40))
    spec = None
    for grow in range(12):
        canvas = (base_w + 60 * grow, base_h + 40 * grow)
        candidate = ChartSpec(variant, categories, series, canvas, step,
                              placement, x_label, y_label, rng_seed=index)
        try:
            render(candidate)
        except SpecTooLarge:
            continue
        spec = candidate
        break
    if spec is None:
        raise SpecTooLarge(f"could not fit spec {index}")
    return spec


def corpus(count: int, seed: int):
    """Seeded list of (spec, raster, truth, fixture) covering all variants.

    Variants cycle deterministically, so each makes up at least ~25% of any
    corpus; everything is reproducible from `seed`.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = random.Random(seed)
    out = []
    for i in range(count):
        variant = VARIANTS[i % len(VARIANTS)]
        spec = _random_spec(rng, variant, i)
        raster, truth, fixture = render(spec)
        out.append((spec, raster, truth, fixture))
    return out
