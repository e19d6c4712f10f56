import random

import pytest

from barparse.axes import AxesGeometry
from barparse.errors import EmptyCandidates, TooFewTicks
from barparse.ocr import TextBox
from barparse.raster import BBox, binarize, run_profiles
from barparse.ticklabel import (Axis, TickSet, detect_axis_labels,
                                detect_ticks, filter_candidates,
                                parse_tick_text, parse_tick_values,
                                sweep_detect)

AXES = AxesGeometry(30, 180, (20, 180), (30, 190))


def tb(text, x, y, w=10, h=10):
    return TextBox(text, BBox(x, y, w, h))


class TestFilterCandidates:
    def test_below_axis_goes_to_x(self):
        box = tb("a", 50, 180)  # center row 185 > 180
        xc, yc = filter_candidates([box], AXES)
        assert xc == [box] and yc == []

    def test_centered_on_axis_excluded(self):
        box = tb("a", 50, 175)  # center row exactly 180
        xc, _ = filter_candidates([box], AXES)
        assert xc == []

    def test_left_of_axis_goes_to_y(self):
        box = tb("5", 10, 50)  # center col 15 < 30
        xc, yc = filter_candidates([box], AXES)
        assert yc == [box] and xc == []

    def test_corpus_candidates_are_exactly_the_outside_text(self, small_corpus):
        from tests.conftest import provider_for
        from barparse.ocr import recognize
        spec, raster, truth, fixture = small_corpus[0]
        boxes = recognize(provider_for(fixture), raster, "img").boxes
        axes = AxesGeometry(truth.y_axis_col, truth.x_axis_row,
                            truth.y_axis_extent, truth.x_axis_extent)
        xc, yc = filter_candidates(boxes, axes)
        for b in xc:
            assert b.bbox.cy > truth.x_axis_row
        for b in yc:
            assert b.bbox.cx < truth.y_axis_col


def sweep_oracle(candidates, start, end, horizontal):
    """Exhaustive check of every integer sweep position."""
    step = 1 if end >= start else -1
    best = (0, None)
    for pos in range(start, end + step, step):
        hit = []
        for b in candidates:
            lo = b.bbox.y if horizontal else b.bbox.x
            hi = lo + (b.bbox.h if horizontal else b.bbox.w) - 1
            if lo <= pos <= hi:
                hit.append(b)
        if len(hit) > best[0]:
            best = (len(hit), hit)
    return best[1] or []


class TestSweepDetect:
    def test_ticks_beat_label(self):
        ticks = [tb(str(i), 40 + 40 * i, 185, 12, 11) for i in range(4)]
        label = [tb("count", 90, 210, 30, 11)]
        got = sweep_detect(ticks + label, 181, 299, horizontal=True)
        assert sorted(b.text for b in got) == ["0", "1", "2", "3"]

    def test_single_candidate(self):
        only = tb("x", 5, 50)
        assert sweep_detect([only], 40, 100, horizontal=True) == [only]

    def test_tie_broken_towards_start(self):
        near = [tb("a", 0, 190), tb("b", 20, 190)]
        far = [tb("c", 0, 220), tb("d", 20, 220)]
        got = sweep_detect(near + far, 181, 299, horizontal=True)
        assert sorted(b.text for b in got) == ["a", "b"]

    def test_empty_candidates_raise(self):
        with pytest.raises(EmptyCandidates):
            sweep_detect([], 0, 10, horizontal=True)

    def test_matches_exhaustive_oracle_on_random_sets(self):
        rng = random.Random(99)
        for _ in range(1000):
            n = rng.randint(1, 8)
            cands = [tb(f"b{i}", rng.randint(0, 50), rng.randint(0, 50),
                        rng.randint(1, 12), rng.randint(1, 12))
                     for i in range(n)]
            start, end = (0, 70) if rng.random() < 0.5 else (70, 0)
            horizontal = rng.random() < 0.5
            got = sweep_detect(cands, start, end, horizontal)
            want = sweep_oracle(cands, start, end, horizontal)
            assert {id(b) for b in got} == {id(b) for b in want}


class TestDetectTicks:
    def test_corpus_ticks_exact(self, small_corpus):
        from tests.conftest import provider_for
        from barparse.axes import detect_axes
        from barparse.ocr import recognize
        for spec, raster, truth, fixture in small_corpus[:8]:
            bin_img = binarize(raster)
            axes = detect_axes(run_profiles(bin_img), bin_img)
            boxes = recognize(provider_for(fixture), raster, "img").boxes
            x_ticks, y_ticks = detect_ticks(boxes, axes,
                                            (raster.width, raster.height))
            assert {b.bbox for b in x_ticks.boxes} == \
                {t.bbox for t in truth.x_ticks}
            assert {b.bbox for b in y_ticks.boxes} == \
                {t.bbox for t in truth.y_ticks}

    def test_one_numeric_tick_raises(self):
        boxes = [tb("5", 10, 50),           # one y tick only
                 tb("a", 40, 185), tb("b", 80, 185)]
        with pytest.raises(TooFewTicks):
            detect_ticks(boxes, AXES, (200, 200))

    def test_category_ticks_have_no_values(self):
        boxes = [tb("A", 40, 185), tb("B", 80, 185), tb("C", 120, 185),
                 tb("0", 10, 170), tb("10", 10, 120), tb("20", 10, 70)]
        x_ticks, y_ticks = detect_ticks(boxes, AXES, (200, 200))
        x_ticks = parse_tick_values(x_ticks)
        assert x_ticks.values == (None, None, None)
        y_ticks = parse_tick_values(y_ticks)
        assert y_ticks.values == (20.0, 10.0, 0.0)

    def test_positions_strictly_monotonic_enforced(self):
        a = tb("x", 10, 10)
        b = tb("y", 10, 30)
        with pytest.raises(ValueError):
            TickSet(Axis.X, ((a, None), (b, None)),
                    (a.bbox.cx, b.bbox.cx))  # identical x-centers


class TestDetectAxisLabels:
    def test_multi_word_x_label(self):
        ticks = [tb(str(i), 40 + 40 * i, 185, 12, 10) for i in range(3)]
        words = [tb("Number", 60, 210, 36, 10), tb("of", 100, 210, 12, 10),
                 tb("Papers", 116, 210, 36, 10)]
        x_ticks, _ = detect_ticks(ticks + words + [tb("0", 10, 170),
                                                   tb("5", 10, 120)],
                                  AXES, (300, 300))
        x_label, _ = detect_axis_labels(ticks + words, AXES, x_ticks,
                                        TickSet(Axis.Y, (), ()), (300, 300))
        assert x_label.text == "Number of Papers"

    def test_no_label_absent(self, small_corpus):
        ticks = [tb(str(i), 40 + 40 * i, 185, 12, 10) for i in range(3)]
        x_ticks, _ = detect_ticks(ticks + [tb("0", 10, 170), tb("5", 10, 120)],
                                  AXES, (300, 300))
        x_label, y_label = detect_axis_labels(ticks, AXES, x_ticks,
                                              TickSet(Axis.Y, (), ()),
                                              (300, 300))
        assert x_label is None

    def test_stacked_y_label_joined_top_to_bottom(self):
        y_ticks_boxes = [tb("0", 14, 170, 6, 10), tb("10", 8, 120, 12, 10),
                         tb("20", 8, 70, 12, 10)]
        words = [tb("total", 2, 80, 5, 10), tb("items", 2, 100, 5, 10)]
        x_boxes = [tb("a", 40, 185), tb("b", 80, 185)]
        x_ticks, y_ticks = detect_ticks(
            x_boxes + y_ticks_boxes + words, AXES, (300, 300))
        _, y_label = detect_axis_labels(x_boxes + y_ticks_boxes + words, AXES,
                                        x_ticks, y_ticks, (300, 300))
        assert y_label.text == "total items"

    def test_corpus_labels_exact(self, small_corpus):
        from tests.conftest import provider_for
        from barparse.axes import detect_axes
        from barparse.ocr import recognize
        for spec, raster, truth, fixture in small_corpus[:8]:
            bin_img = binarize(raster)
            axes = detect_axes(run_profiles(bin_img), bin_img)
            boxes = recognize(provider_for(fixture), raster, "img").boxes
            dims = (raster.width, raster.height)
            x_ticks, y_ticks = detect_ticks(boxes, axes, dims)
            x_label, y_label = detect_axis_labels(boxes, axes, x_ticks,
                                                  y_ticks, dims)
            assert (x_label.text if x_label else None) == \
                (truth.x_label.text if truth.x_label else None)
            assert (y_label.text if y_label else None) == \
                (truth.y_label.text if truth.y_label else None)


class TestParseTickValues:
    @pytest.mark.parametrize("text,value", [
        ("1,000", 1000.0),
        ("0", 0.0),
        ("accuracy", None),
        ("42%", 42.0),
        (" 3.5 ", 3.5),
        ("1e3", 1000.0),
        ("-2.5", -2.5),
        ("12.3.4", None),
        ("", None),
    ])
    def test_parsing(self, text, value):
        if text:
            assert parse_tick_text(text) == value
        else:
            assert parse_tick_text(text) is None
