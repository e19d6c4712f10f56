import numpy as np
import pytest

from barparse.axes import DEFAULT_AXIS_BAND, detect_axes, plot_region
from barparse.errors import DegenerateAxes, EmptyPlotRegion, NoAxisFound
from barparse.raster import BinaryImage, run_profiles


def make_chart_bits():
    """200x200 synthetic: y-axis at col 30 (rows 20-180), x-axis at row 180
    (cols 30-190), a few bars no taller than 150."""
    bits = np.zeros((200, 200), dtype=np.uint8)
    bits[20:181, 30] = 1
    bits[180, 30:191] = 1
    for x0, h in ((50, 100), (90, 150), (130, 60)):
        bits[180 - h:180, x0:x0 + 20] = 1
    return bits


class TestDetectAxes:
    def test_default_band_is_ten(self):
        import inspect
        sig = inspect.signature(detect_axes)
        assert sig.parameters["band"].default == 10 == DEFAULT_AXIS_BAND

    def test_synthetic_chart(self):
        bin_img = BinaryImage(make_chart_bits())
        axes = detect_axes(run_profiles(bin_img), bin_img)
        assert axes.y_axis_col == 30
        assert axes.x_axis_row == 180
        assert axes.y_axis_extent == (20, 180)
        assert axes.x_axis_extent == (30, 190)

    def test_blank_image_raises(self):
        bin_img = BinaryImage(np.zeros((50, 50), dtype=np.uint8))
        with pytest.raises(NoAxisFound):
            detect_axes(run_profiles(bin_img), bin_img)

    def test_degenerate_axes(self):
        bits = np.zeros((20, 20), dtype=np.uint8)
        bits[:, 19] = 1  # only vertical run, in the last column
        bits[0, :] = 1   # only horizontal run, in the first row
        bin_img = BinaryImage(bits)
        with pytest.raises(DegenerateAxes):
            detect_axes(run_profiles(bin_img), bin_img)

    def test_first_match_column_and_last_match_row(self):
        bin_img = BinaryImage(make_chart_bits())
        prof = run_profiles(bin_img)
        axes = detect_axes(prof, bin_img)
        band = DEFAULT_AXIS_BAND
        maxcol = prof.col_max.max()
        maxrow = prof.row_max.max()
        assert prof.col_max[axes.y_axis_col] >= maxcol - band
        assert all(prof.col_max[c] < maxcol - band
                   for c in range(axes.y_axis_col))
        assert prof.row_max[axes.x_axis_row] >= maxrow - band
        assert all(prof.row_max[r] < maxrow - band
                   for r in range(axes.x_axis_row + 1, bin_img.height))

    def test_invariant_under_padding(self):
        bits = make_chart_bits()
        bin_img = BinaryImage(bits)
        base = detect_axes(run_profiles(bin_img), bin_img)
        padded = np.zeros((230, 240), dtype=np.uint8)
        padded[30:230, :200] = bits  # blank rows on top, columns on the right
        pad_img = BinaryImage(padded)
        moved = detect_axes(run_profiles(pad_img), pad_img)
        assert moved.y_axis_col == base.y_axis_col
        assert moved.x_axis_row == base.x_axis_row + 30

    def test_corpus_axes_exact(self, small_corpus):
        from barparse.raster import binarize
        for spec, raster, truth, _ in small_corpus:
            bin_img = binarize(raster)
            axes = detect_axes(run_profiles(bin_img), bin_img)
            assert axes.y_axis_col == truth.y_axis_col
            assert axes.x_axis_row == truth.x_axis_row


class TestPlotRegion:
    def _axes(self, col, row, dims):
        bits = np.zeros((dims[1], dims[0]), dtype=np.uint8)
        bits[:row + 1, col] = 1
        bits[row, col:] = 1
        bin_img = BinaryImage(bits)
        return detect_axes(run_profiles(bin_img), bin_img)

    def test_interior_arithmetic(self):
        axes = self._axes(30, 180, (200, 200))
        assert plot_region(axes, (200, 200)).as_list() == [31, 0, 169, 180]

    def test_corner_axes(self):
        axes = self._axes(0, 199, (200, 200))
        assert plot_region(axes, (200, 200)).as_list() == [1, 0, 199, 199]

    def test_degenerate_interior(self):
        from barparse.axes import AxesGeometry
        axes = AxesGeometry(199, 180, (0, 180), (199, 199))
        with pytest.raises(EmptyPlotRegion):
            plot_region(axes, (200, 200))
