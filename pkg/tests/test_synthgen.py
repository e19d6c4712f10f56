import numpy as np
import pytest

from barparse import synthgen
from barparse.errors import SpecTooLarge
from barparse.raster import binarize, run_profiles
from barparse.synthgen import (PALETTE, VARIANTS, ChartSpec, GroundTruth,
                               corpus, perturb, render)


def simple_spec(variant="vertical", canvas=(360, 260)):
    return ChartSpec(
        variant=variant,
        categories=("alpha", "beta", "gamma"),
        series=(("tuned", PALETTE[0], (12.0, 30.0, 21.0)),
                ("control", PALETTE[1], (25.0, 8.0, 16.0))),
        canvas=canvas,
        tick_step=10.0,
        legend_placement="right",
        x_label="group",
        y_label="score",
    )


class TestChartSpec:
    def test_bad_variant_rejected(self):
        with pytest.raises(ValueError):
            ChartSpec("pie", ("a",), (("s", PALETTE[0], (1.0,)),),
                      (300, 200), 10.0, "right")

    def test_value_count_mismatch_rejected(self):
        with pytest.raises(ValueError):
            ChartSpec("vertical", ("a", "b"), (("s", PALETTE[0], (1.0,)),),
                      (300, 200), 10.0, "right")

    def test_close_colors_rejected(self):
        with pytest.raises(ValueError):
            ChartSpec("vertical", ("a",),
                      (("s", (100, 100, 100), (1.0,)),
                       ("t", (110, 110, 110), (2.0,))),
                      (300, 200), 10.0, "right")

    def test_palette_colors_pairwise_far_apart(self):
        for i, a in enumerate(PALETTE):
            for b in PALETTE[i + 1:]:
                d2 = sum((x - y) ** 2 for x, y in zip(a, b))
                assert d2 > 3 * 60 * 60


class TestRender:
    def test_deterministic(self):
        spec = simple_spec()
        r1, t1, f1 = render(spec)
        r2, t2, f2 = render(spec)
        assert np.array_equal(r1.arr, r2.arr)
        assert t1 == t2 and f1 == f2

    def test_axes_are_the_dominant_runs(self):
        raster, truth, _ = render(simple_spec())
        prof = run_profiles(binarize(raster))
        assert prof.col_max[truth.y_axis_col] == prof.col_max.max()
        assert prof.row_max[truth.x_axis_row] == prof.row_max.max()

    def test_bars_have_ground_truth_color(self):
        raster, truth, _ = render(simple_spec())
        color = {name: col for name, col, _ in simple_spec().series}
        for bar in truth.bars:
            r = bar.rect
            sample = raster.arr[r.y + r.h // 2, r.x + r.w // 2]
            assert tuple(int(c) for c in sample) == color[bar.series]

    def test_bar_extent_matches_alpha(self):
        raster, truth, _ = render(simple_spec())
        for bar in truth.bars:
            assert bar.rect.h * truth.alpha == pytest.approx(bar.value,
                                                             rel=0.02)

    def test_fixture_covers_all_text(self):
        _, truth, fixture = render(simple_spec())
        texts = sorted(e["text"] for e in fixture)
        want = sorted(t.text for t in truth.text_boxes)
        assert texts == want
        assert "tuned" in texts and "alpha" in texts and "score" in texts

    def test_too_small_canvas_raises(self):
        with pytest.raises(SpecTooLarge):
            render(simple_spec(canvas=(120, 80)))

    def test_stacked_segments_sum_to_category_total(self):
        spec = simple_spec(variant="stacked-vertical")
        _, truth, _ = render(spec)
        for ci, cat in enumerate(spec.categories):
            segs = [b for b in truth.bars if b.category == cat]
            total_px = sum(b.rect.h for b in segs)
            total_val = sum(row[ci] for _, _, row in spec.series)
            assert total_px * truth.alpha == pytest.approx(total_val, rel=0.05)

    def test_ground_truth_round_trips_through_dict(self):
        _, truth, _ = render(simple_spec())
        assert GroundTruth.from_dict(truth.to_dict()) == truth


class TestCorpus:
    def test_deterministic(self):
        a = corpus(6, seed=5)
        b = corpus(6, seed=5)
        for (sa, ra, ta, fa), (sb, rb, tb_, fb) in zip(a, b):
            assert sa == sb and ta == tb_ and fa == fb
            assert np.array_equal(ra.arr, rb.arr)

    def test_different_seed_differs(self):
        a = corpus(4, seed=1)
        b = corpus(4, seed=2)
        assert any(not np.array_equal(x[1].arr, y[1].arr)
                   for x, y in zip(a, b))

    def test_variants_cycle(self):
        charts = corpus(9, seed=3)
        got = [spec.variant for spec, _, _, _ in charts]
        assert got == [VARIANTS[i % 4] for i in range(9)]

    def test_hundred_chart_corpus_covers_each_variant_25_times(self):
        charts = corpus(100, seed=42)
        hist = {v: 0 for v in VARIANTS}
        for spec, _, _, _ in charts:
            hist[spec.variant] += 1
        assert all(n >= 20 for n in hist.values())

    def test_ground_truth_value_lookup(self):
        spec, _, truth, _ = corpus(1, seed=9)[0]
        name, _, values = spec.series[0]
        for cat, v in zip(spec.categories, values):
            assert truth.value_of(name, cat) == pytest.approx(v)


class TestPerturb:
    def test_k_zero_is_identity(self):
        raster, _, _ = render(simple_spec())
        assert np.array_equal(perturb(raster, 0, seed=1).arr, raster.arr)

    def test_k_bounds_channel_change(self):
        raster, _, _ = render(simple_spec())
        noisy = perturb(raster, 4, seed=11)
        diff = noisy.arr.astype(int) - raster.arr.astype(int)
        assert np.abs(diff).max() <= 4
        assert np.abs(diff).max() > 0

    def test_seeded(self):
        raster, _, _ = render(simple_spec())
        assert np.array_equal(perturb(raster, 4, seed=7).arr,
                              perturb(raster, 4, seed=7).arr)
        assert not np.array_equal(perturb(raster, 4, seed=7).arr,
                                  perturb(raster, 4, seed=8).arr)

    def test_k_out_of_range_rejected(self):
        raster, _, _ = render(simple_spec())
        with pytest.raises(ValueError):
            perturb(raster, 11)
        with pytest.raises(ValueError):
            perturb(raster, -1)
