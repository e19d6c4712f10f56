"""Command line interface: parse charts, generate corpora, run evaluations.

Exit codes are a stable contract: 0 full success, 1 fatal error, 2 partial
success (some charts in a batch failed). Per-chart problems go to stderr as
structured lines: ``WARN <image_id> <code> <detail>``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import evaluate, synthgen
from .errors import BarparseError, CorpusMismatch
from .ocr import HttpProvider, load_fixture
from .output import render
from .pipeline import (PipelineConfig, parse_chart, result_from_dict,
                       result_to_dict)
from .raster import decode_image, encode_png

OCR_URL_ENV = "CHARTPARSER_OCR_URL"


def _warn(image_id: str, code: str, detail: str):
    print(f"WARN {image_id} {code} {detail}", file=sys.stderr)


def _make_provider(spec: str | None):
    if spec is None:
        url = os.environ.get(OCR_URL_ENV)
        if not url:
            raise BarparseError(
                f"no OCR mode: pass --ocr or set {OCR_URL_ENV}")
        return HttpProvider(url)
    if spec.startswith("fixture:"):
        return load_fixture(spec[len("fixture:"):])
    if spec.startswith("http:"):
        return HttpProvider(spec[len("http:"):])
    raise BarparseError(f"bad --ocr value {spec!r}; use fixture:<path> or "
                        "http:<url>")


def _config(args) -> PipelineConfig:
    return PipelineConfig(binarize_threshold=args.binarize_threshold,
                          axis_band=args.axis_band,
                          merge_gap=args.merge_gap,
                          color_tolerance=args.color_tolerance)


def _add_threshold_flags(p: argparse.ArgumentParser):
    p.add_argument("--binarize-threshold", type=int, default=128,
                   help="ink luminance threshold (default 128)")
    p.add_argument("--axis-band", type=int, default=10,
                   help="max-run band around the maximum for axis rows/cols "
                        "(default 10)")
    p.add_argument("--merge-gap", type=int, default=10,
                   help="max horizontal gap when merging legend words "
                        "(default 10)")
    p.add_argument("--color-tolerance", type=int, default=5,
                   help="per-channel tolerance for swatch region growing "
                        "(default 5)")


def cmd_parse(args) -> int:
    try:
        provider = _make_provider(args.ocr)
        config = _config(args)
    except BarparseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    out_dir = Path(args.out) if args.out else None
    if out_dir:
        out_dir.mkdir(parents=True, exist_ok=True)
    failed = 0
    for path in args.images:
        path = Path(path)
        image_id = path.stem
        try:
            img = decode_image(path.read_bytes())
            result = parse_chart(img, provider, image_id, config)
        except (BarparseError, OSError) as exc:
            _warn(image_id, type(exc).__name__, str(exc))
            failed += 1
            continue
        for w in result.warnings:
            _warn(image_id, *w.split(" ", 1))
        rendered = render(result.table, args.format, caption=image_id)
        target = (out_dir or path.parent) / f"{image_id}.{args.format}"
        target.write_bytes(rendered.data)
        print(target)
    if failed == len(args.images):
        return 1
    return 2 if failed else 0


def cmd_gen(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    entries = []
    charts = synthgen.corpus(args.count, args.seed)
    for i, (spec, raster, truth, fixture) in enumerate(charts):
        image_id = f"chart_{i:04d}"
        if args.perturb:
            raster = synthgen.perturb(raster, args.perturb, seed=args.seed + i)
        (out / f"{image_id}.png").write_bytes(encode_png(raster))
        (out / f"{image_id}.truth.json").write_text(
            json.dumps(truth.to_dict()) + "\n", encoding="utf-8")
        (out / f"{image_id}.ocr.json").write_text(
            json.dumps({"images": {image_id: fixture}}) + "\n",
            encoding="utf-8")
        entries.append({"id": image_id, "variant": spec.variant,
                        "png": f"{image_id}.png",
                        "truth": f"{image_id}.truth.json",
                        "ocr": f"{image_id}.ocr.json"})
    manifest = {"count": args.count, "seed": args.seed,
                "perturb": args.perturb, "entries": entries}
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n",
                                       encoding="utf-8")
    print(out / "manifest.json")
    return 0


def _load_corpus(corpus_dir: Path):
    manifest_path = corpus_dir / "manifest.json"
    if not manifest_path.exists():
        raise BarparseError(f"no manifest.json in {corpus_dir}")
    manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    if not manifest.get("entries"):
        raise BarparseError(f"empty corpus in {corpus_dir}")
    return manifest


def cmd_eval(args) -> int:
    corpus_dir = Path(args.corpus)
    try:
        manifest = _load_corpus(corpus_dir)
        config = _config(args)
    except BarparseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    preds = {}
    truths = {}
    pred_dir = Path(args.pred) if args.pred else None
    write_pred = Path(args.write_pred) if args.write_pred else None
    if write_pred:
        write_pred.mkdir(parents=True, exist_ok=True)
    for entry in manifest["entries"]:
        image_id = entry["id"]
        truths[image_id] = synthgen.GroundTruth.from_dict(
            json.loads((corpus_dir / entry["truth"]).read_text("utf-8")))
        if pred_dir is not None:
            pred_path = pred_dir / f"{image_id}.pred.json"
            if not pred_path.exists():
                print(f"error: missing prediction {pred_path}",
                      file=sys.stderr)
                return 1
            preds[image_id] = result_from_dict(
                json.loads(pred_path.read_text("utf-8")))
            continue
        try:
            provider = load_fixture(corpus_dir / entry["ocr"])
            img = decode_image((corpus_dir / entry["png"]).read_bytes())
            result = parse_chart(img, provider, image_id, config)
        except BarparseError as exc:
            _warn(image_id, type(exc).__name__, str(exc))
            preds[image_id] = None
            continue
        preds[image_id] = result
        if write_pred:
            (write_pred / f"{image_id}.pred.json").write_text(
                json.dumps(result_to_dict(result)) + "\n", encoding="utf-8")

    th = evaluate.EvalThresholds(iou=args.iou)
    try:
        report = evaluate.component_accuracy(preds, truths, th)
    except CorpusMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    out = Path(args.out) if args.out else corpus_dir / "report.json"
    out.write_text(json.dumps(report.to_dict(), indent=2) + "\n",
                   encoding="utf-8")
    if args.text:
        print(report.to_text(), end="")
    print(out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="barparse",
        description="Extract accessible data tables from bar chart images.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse chart images into data tables")
    p.add_argument("images", nargs="+", help="chart image files (PNG/JPEG)")
    p.add_argument("--ocr", help="fixture:<path> or http:<url> "
                   f"(falls back to ${OCR_URL_ENV})")
    p.add_argument("--format", choices=("json", "csv", "html"),
                   default="json")
    p.add_argument("--out", help="output directory (default: next to input)")
    _add_threshold_flags(p)
    p.set_defaults(func=cmd_parse)

    g = sub.add_parser("gen", help="generate a synthetic chart corpus")
    g.add_argument("--count", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True)
    g.add_argument("--perturb", type=int, default=0, metavar="K",
                   help="per-channel jitter amplitude (0 = crisp)")
    g.set_defaults(func=cmd_gen)

    e = sub.add_parser("eval", help="score the pipeline against ground truth")
    e.add_argument("--corpus", required=True,
                   help="corpus directory produced by gen")
    e.add_argument("--pred", help="directory of <id>.pred.json detection "
                   "dumps to score instead of running the pipeline")
    e.add_argument("--write-pred", help="write detection dumps here")
    e.add_argument("--out", help="report JSON path "
                   "(default <corpus>/report.json)")
    e.add_argument("--iou", type=float, default=0.5,
                   help="IoU threshold for box matching (default 0.5)")
    e.add_argument("--text", action="store_true",
                   help="also print a plain-text accuracy table")
    _add_threshold_flags(e)
    e.set_defaults(func=cmd_eval)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BarparseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
