"""Evaluation: IoU box matching with F1, and per-component accuracies.

Correctness thresholds (configurable): axes within 2px, label text exact
after whitespace normalization, tick sets at box F1@0.5 = 1 with exact
values, legend name sets exact, legend colors within 5 per channel, data
values within 2% relative or twice the value-per-pixel ratio, whichever is
larger.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import CorpusMismatch
from .raster import BBox

COMPONENTS = ("x_axis", "y_axis", "x_label", "y_label", "x_ticks", "y_ticks",
              "legend", "legend_color", "data_association")

_TABLE_ROWS = (
    ("x_axis", "X-axis"),
    ("y_axis", "Y-axis"),
    ("x_label", "X-axis label"),
    ("y_label", "Y-axis label"),
    ("x_ticks", "X-axis ticks"),
    ("y_ticks", "Y-axis ticks"),
    ("legend", "Legend"),
    ("legend_color", "Legend color"),
    ("data_association", "Data association"),
)


@dataclass(frozen=True)
class EvalThresholds:
    axis_px: int = 2
    color_channel: int = 5
    value_rel: float = 0.02
    value_alpha_mult: float = 2.0
    iou: float = 0.5


@dataclass
class EvalReport:
    accuracy: dict[str, float]
    text_precision: float
    text_recall: float
    text_f1: float
    corpus_size: int
    failures: dict[str, list[str]] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "accuracy": {k: self.accuracy[k] for k in COMPONENTS},
            "text_detection": {
                "precision": self.text_precision,
                "recall": self.text_recall,
                "f1": self.text_f1,
            },
            "corpus_size": self.corpus_size,
        }

    def to_text(self) -> str:
        lines = [f"{'Component':<20} Accuracy (%)"]
        for key, title in _TABLE_ROWS:
            lines.append(f"{title:<20} {100 * self.accuracy[key]:.1f}")
        lines.append(f"{'Text F1@IoU':<20} {self.text_f1:.3f}")
        lines.append(f"charts evaluated: {self.corpus_size}")
        return "\n".join(lines) + "\n"


def iou(a: BBox, b: BBox) -> float:
    """Intersection area over union area; 0 for disjoint boxes."""
    ix = max(0, min(a.right, b.right) - max(a.x, b.x))
    iy = max(0, min(a.bottom, b.bottom) - max(a.y, b.y))
    inter = ix * iy
    union = a.area + b.area - inter
    return inter / union if union > 0 else 0.0


def match_f1(pred, truth, threshold: float = 0.5):
    """Greedy one-to-one matching by descending IoU.

    A pair counts as a match only when its IoU is strictly above the
    threshold. Ties are broken by (pred index, truth index) so the result is
    deterministic and independent of the input ordering of equal-IoU pairs.
    """
    pred = list(pred)
    truth = list(truth)
    pairs = []
    for i, p in enumerate(pred):
        for j, t in enumerate(truth):
            v = iou(p, t)
            if v > threshold:
                pairs.append((v, i, j))
    pairs.sort(key=lambda pij: (-pij[0], pij[1], pij[2]))
    used_p: set[int] = set()
    used_t: set[int] = set()
    matches = 0
    matched_pairs = []
    for v, i, j in pairs:
        if i in used_p or j in used_t:
            continue
        used_p.add(i)
        used_t.add(j)
        matches += 1
        matched_pairs.append((i, j))
    precision = matches / len(pred) if pred else 0.0
    recall = matches / len(truth) if truth else 0.0
    f1 = 2 * precision * recall / (precision + recall) \
        if precision + recall > 0 else 0.0
    return precision, recall, f1, matched_pairs


def _norm_text(s: str | None) -> str:
    return " ".join(s.split()) if s else ""


def _check_label(pred_label, truth_label) -> bool:
    pred_text = _norm_text(pred_label.text if pred_label else None)
    truth_text = _norm_text(truth_label.text if truth_label else None)
    return pred_text == truth_text


def _check_ticks(pred_ticks, truth_ticks, threshold: float) -> bool:
    pred_boxes = [b.bbox for b in pred_ticks.boxes]
    truth_boxes = [t.bbox for t in truth_ticks]
    _, _, f1, pairs = match_f1(pred_boxes, truth_boxes, threshold)
    if len(pred_boxes) != len(truth_boxes) or f1 != 1.0:
        return False
    pred_values = pred_ticks.values
    for i, j in pairs:
        if pred_values[i] != truth_ticks[j].value:
            return False
    return True


def _check_values(pred_table, truth, th: EvalThresholds) -> bool:
    cells = {}
    for name, _, values in pred_table.series:
        for cat, v in zip(pred_table.categories, values):
            cells[(name, cat)] = v
    tol_floor = th.value_alpha_mult * truth.alpha
    seen = set()
    for bar in truth.bars:
        key = (bar.series, bar.category)
        if key in seen:
            continue
        seen.add(key)
        v = truth.value_of(bar.series, bar.category)
        got = cells.get(key)
        if got is None:
            return False
        if abs(got - v) > max(th.value_rel * abs(v), tol_floor):
            return False
    return True


def score_chart(pred, truth, th: EvalThresholds = EvalThresholds()) -> dict[str, bool]:
    """Per-component pass/fail for one chart; pred=None fails everything."""
    if pred is None:
        return {c: False for c in COMPONENTS}
    out = {}
    out["x_axis"] = abs(pred.axes.x_axis_row - truth.x_axis_row) <= th.axis_px
    out["y_axis"] = abs(pred.axes.y_axis_col - truth.y_axis_col) <= th.axis_px
    out["x_label"] = _check_label(pred.x_label, truth.x_label)
    out["y_label"] = _check_label(pred.y_label, truth.y_label)
    out["x_ticks"] = _check_ticks(pred.x_ticks, truth.x_ticks, th.iou)
    out["y_ticks"] = _check_ticks(pred.y_ticks, truth.y_ticks, th.iou)
    pred_names = set(e.name for e in pred.legend.entries) if pred.legend else set()
    truth_names = set(e.name for e in truth.legend)
    out["legend"] = pred_names == truth_names
    if out["legend"] and pred.legend is not None:
        colors = {e.name: e.color for e in pred.legend.entries}
        out["legend_color"] = all(
            max(abs(a - b) for a, b in zip(colors[e.name], e.color))
            <= th.color_channel
            for e in truth.legend
        )
    else:
        out["legend_color"] = out["legend"] and not truth_names
    out["data_association"] = _check_values(pred.table, truth, th)
    return out


def component_accuracy(preds: dict, truths: dict,
                       th: EvalThresholds = EvalThresholds()) -> EvalReport:
    """Aggregate per-component accuracy over an id-aligned corpus.

    `preds` maps image id -> ParseResult (or None for failed parses);
    `truths` maps image id -> GroundTruth.
    """
    if set(preds) != set(truths):
        raise CorpusMismatch(
            f"{len(set(preds) ^ set(truths))} ids not shared between "
            "predictions and ground truth")
    if not truths:
        raise CorpusMismatch("empty corpus")
    totals = {c: 0 for c in COMPONENTS}
    failures: dict[str, list[str]] = {c: [] for c in COMPONENTS}
    tp_sum = {"p": 0.0, "r": 0.0, "f": 0.0}
    for image_id in sorted(truths):
        truth = truths[image_id]
        pred = preds[image_id]
        scores = score_chart(pred, truth, th)
        for c, ok in scores.items():
            if ok:
                totals[c] += 1
            else:
                failures[c].append(image_id)
        if pred is not None:
            p, r, f1, _ = match_f1([b.bbox for b in pred.ocr_boxes],
                                   [t.bbox for t in truth.text_boxes], th.iou)
        else:
            p = r = f1 = 0.0
        tp_sum["p"] += p
        tp_sum["r"] += r
        tp_sum["f"] += f1
    n = len(truths)
    return EvalReport(
        accuracy={c: totals[c] / n for c in COMPONENTS},
        text_precision=tp_sum["p"] / n,
        text_recall=tp_sum["r"] / n,
        text_f1=tp_sum["f"] / n,
        corpus_size=n,
        failures={c: ids for c, ids in failures.items() if ids},
    )
