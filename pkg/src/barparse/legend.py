"""Legend detection and swatch color estimation.

After ticks and labels are removed, the surviving text boxes are legend
names (plus OCR artifacts that get pruned). Words closer than a small gap
merge into multi-word names; names aligned with each other form the legend
group; the filled color swatch next to each name is recovered by growing
pixel groups whose members stay within a per-channel tolerance of the
group's running mean.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import NoLegendFound, NoSwatchFound
from .ocr import TextBox
from .raster import BBox, Raster

DEFAULT_MERGE_GAP = 10
DEFAULT_COLOR_TOLERANCE = 5
ALIGN_TOLERANCE = 5           # px, for center / left-edge alignment
SWATCH_STRIP_OFFSET = 30      # px, cap on the name-box-to-swatch gap
MIN_SWATCH_PIXELS = 9
BACKGROUND_MIN_CHANNEL = 250  # group means at/above this are page background


class LegendOrientation(Enum):
    HORIZONTAL = "horizontal"
    VERTICAL = "vertical"


@dataclass(frozen=True)
class LegendEntry:
    name: str
    name_box: BBox
    swatch_box: BBox
    color: tuple[int, int, int]


@dataclass(frozen=True)
class LegendSet:
    entries: tuple[LegendEntry, ...]
    orientation: LegendOrientation


def _is_numeric(text: str) -> bool:
    from .ticklabel import parse_tick_text
    return parse_tick_text(text) is not None


def prune_non_legend(boxes, tick_boxes, label_boxes, plot: BBox):
    """Drop tick/label boxes, error-bar glyphs and in-plot value annotations."""
    drop = {(b.text, b.bbox) for b in tick_boxes}
    drop |= {(b.text, b.bbox) for b in label_boxes}
    kept = []
    for b in boxes:
        if (b.text, b.bbox) in drop:
            continue
        if b.text in ("I", "l", "|"):  # OCR reading of error bars
            continue
        if _is_numeric(b.text) and plot.contains_point(b.bbox.cx, b.bbox.cy):
            continue
        kept.append(b)
    return kept


def _vertically_compatible(a: TextBox, b: TextBox) -> bool:
    shorter = min(a.bbox.h, b.bbox.h)
    return abs(a.bbox.cy - b.bbox.cy) <= shorter / 2.0


def _horizontal_gap(a: TextBox, b: TextBox) -> int:
    left, right = (a, b) if a.bbox.x <= b.bbox.x else (b, a)
    return right.bbox.x - left.bbox.right


def merge_words(boxes, gap: int = DEFAULT_MERGE_GAP):
    """Merge words of multi-word legend names.

    Transitive closure of: horizontal gap < `gap` and vertical centers within
    half the shorter box height. Merged text joins left to right; merged box
    is the union. Result is independent of input order.
    """
    boxes = list(boxes)
    n = len(boxes)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if _horizontal_gap(boxes[i], boxes[j]) < gap and \
                    _vertically_compatible(boxes[i], boxes[j]):
                parent[find(i)] = find(j)

    groups: dict[int, list[TextBox]] = {}
    for i, b in enumerate(boxes):
        groups.setdefault(find(i), []).append(b)
    merged = []
    for members in groups.values():
        members.sort(key=lambda b: (b.bbox.x, b.bbox.y))
        box = members[0].bbox
        for m in members[1:]:
            box = box.union(m.bbox)
        text = " ".join(m.text for m in members)
        conf = min(m.confidence for m in members)
        merged.append(TextBox(text, box, conf))
    merged.sort(key=lambda b: (b.bbox.y, b.bbox.x))
    return merged


def group_aligned(merged, plot: BBox | None = None):
    """Partition merged name boxes into alignment components and pick the
    largest (ties: nearest the plot's top-right corner).

    Two boxes connect when horizontally aligned (vertical centers within
    tolerance) or vertically aligned (left edges within tolerance). Returns
    the winning component and its orientation.
    """
    merged = list(merged)
    if not merged:
        raise NoLegendFound("no legend candidates remain")
    n = len(merged)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def h_aligned(a, b):
        return abs(a.bbox.cy - b.bbox.cy) <= ALIGN_TOLERANCE

    def v_aligned(a, b):
        return abs(a.bbox.x - b.bbox.x) <= ALIGN_TOLERANCE

    for i in range(n):
        for j in range(i + 1, n):
            if h_aligned(merged[i], merged[j]) or v_aligned(merged[i], merged[j]):
                parent[find(i)] = find(j)

    comps: dict[int, list[TextBox]] = {}
    for i, b in enumerate(merged):
        comps.setdefault(find(i), []).append(b)

    def corner_dist(members):
        if plot is None:
            return 0.0
        cx = sum(m.bbox.cx for m in members) / len(members)
        cy = sum(m.bbox.cy for m in members) / len(members)
        tr_x, tr_y = plot.right - 1, plot.y
        return (cx - tr_x) ** 2 + (cy - tr_y) ** 2

    best = min(comps.values(), key=lambda ms: (-len(ms), corner_dist(ms)))
    if len(best) > 1 and all(h_aligned(best[0], m) for m in best[1:]):
        orientation = LegendOrientation.HORIZONTAL
    else:
        orientation = LegendOrientation.VERTICAL
    if orientation is LegendOrientation.HORIZONTAL:
        best = sorted(best, key=lambda b: b.bbox.x)
    else:
        best = sorted(best, key=lambda b: b.bbox.y)
    return best, orientation


def _grow_groups(colors: np.ndarray, tolerance: int):
    """Partition a pixel list (raster order) into tolerance groups.

    Each unassigned pixel in turn seeds a group; every later unassigned pixel
    joins when all its channels sit within `tolerance` of the group's running
    mean, which updates after each admission.
    """
    n = len(colors)
    assigned = [False] * n
    px = colors.tolist()
    groups = []
    for s in range(n):
        if assigned[s]:
            continue
        members = [s]
        assigned[s] = True
        sr, sg, sb = px[s]
        cnt = 1
        for i in range(s + 1, n):
            if assigned[i]:
                continue
            r, g, b = px[i]
            if (abs(r * cnt - sr) <= tolerance * cnt and
                    abs(g * cnt - sg) <= tolerance * cnt and
                    abs(b * cnt - sb) <= tolerance * cnt):
                members.append(i)
                assigned[i] = True
                sr += r
                sg += g
                sb += b
                cnt += 1
        groups.append((members, (sr / cnt, sg / cnt, sb / cnt)))
    return groups


def estimate_swatch_color(img: Raster, name_box: BBox,
                          tolerance: int = DEFAULT_COLOR_TOLERANCE
                          ) -> tuple[BBox, tuple[int, int, int]]:
    """Recover the filled swatch color beside a legend name.

    Searches strips left and right of the name box (same row band, reaching
    3x the box height plus the allowed offset outward) and grows pixel
    groups; the largest non-background group wins. Returns the group's tight
    bounding box and per-channel rounded mean color.
    """
    # strip reaches 3x the text height outward; swatches sit closer than the
    # 30px offset cap for any realistic text size, and a short reach keeps
    # neighboring legend entries and plot ink out of the strip
    reach = max(3 * name_box.h, SWATCH_STRIP_OFFSET)
    y0 = max(0, name_box.y)
    y1 = min(img.height, name_box.bottom)
    strips = []
    lx0 = max(0, name_box.x - reach)
    if lx0 < name_box.x:
        strips.append((lx0, min(name_box.x, img.width)))
    rx1 = min(img.width, name_box.right + reach)
    if name_box.right < rx1:
        strips.append((name_box.right, rx1))

    coords = []
    colors = []
    for x0, x1 in strips:
        sub = img.arr[y0:y1, x0:x1]
        ys, xs = np.mgrid[y0:y1, x0:x1]
        coords.append(np.column_stack([ys.ravel(), xs.ravel()]))
        colors.append(sub.reshape(-1, 3))
    if not coords:
        raise NoSwatchFound("no room beside the name box")
    coords = np.concatenate(coords)
    colors = np.concatenate(colors).astype(np.int64)

    groups = _grow_groups(colors, tolerance)
    best = None
    for members, mean in groups:
        if len(members) < MIN_SWATCH_PIXELS:
            continue
        if min(mean) >= BACKGROUND_MIN_CHANNEL:
            continue
        if best is None or len(members) > len(best[0]):
            best = (members, mean)
    if best is None:
        raise NoSwatchFound("largest pixel group is background or too small")
    members, mean = best
    pts = coords[members]
    y_min, x_min = pts.min(axis=0)
    y_max, x_max = pts.max(axis=0)
    swatch = BBox(int(x_min), int(y_min),
                  int(x_max - x_min + 1), int(y_max - y_min + 1))
    color = tuple(int(np.floor(c + 0.5)) for c in mean)
    return swatch, color


def detect_legend(img: Raster, boxes, tick_boxes, label_boxes, plot: BBox,
                  gap: int = DEFAULT_MERGE_GAP,
                  tolerance: int = DEFAULT_COLOR_TOLERANCE) -> LegendSet:
    """Full legend recovery: prune, merge, group, estimate colors."""
    kept = prune_non_legend(boxes, tick_boxes, label_boxes, plot)
    merged = merge_words(kept, gap=gap)
    names, orientation = group_aligned(merged, plot)
    entries = []
    seen: dict[str, int] = {}
    for nb in names:
        try:
            swatch, color = estimate_swatch_color(img, nb.bbox, tolerance)
        except NoSwatchFound:
            continue
        name = nb.text
        if name in seen:
            seen[name] += 1
            name = f"{name} ({seen[nb.text]})"
        else:
            seen[name] = 1
        entries.append(LegendEntry(name, nb.bbox, swatch, color))
    if not entries:
        raise NoLegendFound("no legend entry has a recoverable swatch")
    return LegendSet(tuple(entries), orientation)
