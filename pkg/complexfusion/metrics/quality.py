import math
import typing as ty

import numpy as np

from complexfusion.errors import DataError, DimensionMismatch, OutOfBounds
from complexfusion.types.metrics import LineAxis, ProfileLine, QualityReport
from complexfusion.types.raster import BrightnessTable
from complexfusion.utils.logging import logger

DEFAULT_BINS = 256


def bin_indices(table: BrightnessTable, bins: int) -> np.ndarray:
    """Bin i holds [i/bins, (i+1)/bins); the last bin is closed at 1.0."""
    if bins < 2:
        raise DataError(f"A histogram needs at least 2 bins, got {bins}")
    table.require_unit_range("histogram input")
    idx = np.floor(table.values * bins).astype(np.int64)
    return np.minimum(idx, bins - 1)


def histogram(table: BrightnessTable, bins: int = DEFAULT_BINS) -> np.ndarray:
    return np.bincount(bin_indices(table, bins).ravel(), minlength=bins)


def entropy_from_counts(counts: ty.Sequence[int]) -> float:
    counts = np.asarray(counts, dtype=np.float64)
    total = counts.sum()
    if total == 0:
        return 0.0
    p = counts[counts > 0] / total
    return max(0.0, -math.fsum(p * np.log2(p)))


def shannon_entropy(table: BrightnessTable, bins: int = DEFAULT_BINS) -> float:
    return entropy_from_counts(histogram(table, bins))


def occupied_bins(counts: ty.Sequence[int]) -> int:
    return int(np.count_nonzero(np.asarray(counts)))


def brightness_profile(table: BrightnessTable, line: ProfileLine) -> ty.List[float]:
    """Pixel values along a column (top to bottom) or a row (left to right)."""
    if line.axis == LineAxis.COLUMN:
        if not 0 <= line.index < table.width:
            raise OutOfBounds(f"Column {line.index} is outside a table of width {table.width}")
        return table.values[:, line.index].tolist()
    if not 0 <= line.index < table.height:
        raise OutOfBounds(f"Row {line.index} is outside a table of height {table.height}")
    return table.values[line.index, :].tolist()


def assess(table: BrightnessTable, bins: int = DEFAULT_BINS) -> QualityReport:
    counts = histogram(table, bins)
    return QualityReport(
        histogram=[int(c) for c in counts],
        bin_count=bins,
        entropy_bits=entropy_from_counts(counts),
        occupied_bins=occupied_bins(counts),
        min=float(table.values.min()),
        max=float(table.values.max()),
        mean=float(table.values.mean()),
    )


def _flat_pair(a: BrightnessTable, b: BrightnessTable) -> ty.Tuple[np.ndarray, np.ndarray]:
    if a.shape != b.shape:
        raise DimensionMismatch(f"Cannot compare tables of shapes {a.shape} and {b.shape}")
    return a.values.ravel(), b.values.ravel()


def pearson_correlation(a: BrightnessTable, b: BrightnessTable) -> float:
    """Pearson correlation of two tables; 0 when either one is constant."""
    x, y = _flat_pair(a, b)
    if np.ptp(x) == 0.0 or np.ptp(y) == 0.0:
        logger.debug("pearson_correlation: constant table, reporting 0")
        return 0.0
    return max(-1.0, min(1.0, float(np.corrcoef(x, y)[0, 1])))


def mean_abs_difference(a: BrightnessTable, b: BrightnessTable) -> float:
    x, y = _flat_pair(a, b)
    return float(np.mean(np.abs(x - y)))
