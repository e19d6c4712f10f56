#!/usr/bin/env python3
"""Walkthrough: generate one synthetic chart, parse it, print the table.

Every stage of the pipeline is invoked by hand here so you can see what the
intermediate objects look like; the `barparse` CLI wraps exactly these calls.
"""

from barparse import synthgen
from barparse.ocr import FixtureProvider, TextBox
from barparse.output import render
from barparse.pipeline import parse_chart
from barparse.raster import BBox


def main():
    # One reproducible chart: spec, rendered image, ground truth and a
    # fixture with the true text boxes (standing in for a live OCR service).
    spec, raster, truth, fixture = synthgen.corpus(1, seed=7)[0]
    print(f"generated a {spec.variant} chart, "
          f"{raster.width}x{raster.height}px, "
          f"{len(spec.series)} series x {len(spec.categories)} categories")

    boxes = [TextBox(e["text"], BBox(*e["bbox"]), e["confidence"])
             for e in fixture]
    provider = FixtureProvider({"demo": boxes})

    result = parse_chart(raster, provider, "demo")
    print(f"axes: y at col {result.axes.y_axis_col}, "
          f"x at row {result.axes.x_axis_row}")
    print(f"orientation: {result.orientation.value}")
    if result.legend:
        for e in result.legend.entries:
            print(f"legend entry {e.name!r} -> color {e.color}")

    print("\n--- recovered table (CSV) ---")
    print(render(result.table, "csv").text, end="")

    print("\n--- ground truth check ---")
    for name, _, values in result.table.series:
        for cat, got in zip(result.table.categories, values):
            want = truth.value_of(name, cat)
            print(f"{name:12s} {cat:8s} got {got:7.2f}  true {want:7.2f}")


if __name__ == "__main__":
    main()
