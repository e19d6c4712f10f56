"""barparse: turn raster bar-chart images into accessible data tables."""

from .axes import AxesGeometry, detect_axes, plot_region
from .bars import ChartTable, Orientation, ValueMap, bar_value, value_tick_ratio
from .errors import BarparseError
from .evaluate import EvalReport, component_accuracy, iou, match_f1
from .legend import LegendEntry, LegendSet, estimate_swatch_color
from .ocr import OcrResult, TextBox, load_fixture, recognize
from .output import to_csv, to_html, to_json
from .pipeline import ParseResult, PipelineConfig, parse_chart
from .raster import BBox, BinaryImage, Raster, binarize, decode_image, run_profiles
from .synthgen import ChartSpec, GroundTruth, corpus, perturb, render
from .ticklabel import AxisLabel, TickSet, detect_ticks, parse_tick_values

__version__ = "0.1.0"

__all__ = [
    "AxesGeometry", "AxisLabel", "BBox", "BarparseError", "BinaryImage",
    "ChartSpec", "ChartTable", "EvalReport", "GroundTruth", "LegendEntry",
    "LegendSet", "OcrResult", "Orientation", "ParseResult", "PipelineConfig",
    "Raster", "TextBox", "TickSet", "ValueMap", "bar_value", "binarize",
    "component_accuracy", "corpus", "decode_image", "detect_axes",
    "detect_ticks", "estimate_swatch_color", "iou", "load_fixture",
    "match_f1", "parse_chart", "parse_tick_values", "perturb", "plot_region",
    "recognize", "render", "run_profiles", "to_csv", "to_html", "to_json",
    "value_tick_ratio",
]
