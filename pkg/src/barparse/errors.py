"""Exception hierarchy for the bar-chart extraction pipeline."""


class BarparseError(Exception):
    """Base class for all pipeline errors."""


class DecodeError(BarparseError):
    """Image bytes could not be decoded as PNG/JPEG."""


class NoAxisFound(BarparseError):
    """Blank binary image: no ink runs to locate an axis in."""


class DegenerateAxes(BarparseError):
    """Axes found but they leave no plot interior."""


class EmptyPlotRegion(BarparseError):
    """Plot interior has zero area."""


class ProviderUnavailable(BarparseError):
    """OCR provider could not answer (missing fixture entry, network failure)."""


class MalformedResponse(BarparseError):
    """OCR provider answered with data violating the box schema."""


class EmptyCandidates(BarparseError):
    """Sweep requested over an empty candidate list."""


class TooFewTicks(BarparseError):
    """Fewer than two ticks available on the value axis."""


class NoLegendFound(BarparseError):
    """No legend candidate group remains after pruning."""


class NoSwatchFound(BarparseError):
    """No plausible color swatch next to a legend name."""


class AmbiguousOrientation(BarparseError):
    """Neither axis carries numeric ticks."""


class NonMonotonicTicks(BarparseError):
    """Tick values are not strictly monotonic along the axis."""


class ZeroPixelSpan(BarparseError):
    """Ticks share pixel positions; no pixel distance to divide by."""


class EmptyChart(BarparseError):
    """No bars were extracted at all."""


class SpecTooLarge(BarparseError):
    """Synthetic chart layout does not fit its canvas."""


class CorpusMismatch(BarparseError):
    """Prediction and ground-truth sets do not share the same ids."""
