import numpy as np

from complexfusion.errors import DataError
from complexfusion.types.raster import BrightnessTable, ChannelTag

# ITU-R BT.601 luma weights
LUMA_WEIGHTS = (0.299, 0.587, 0.114)


def luminance(rgb: np.ndarray) -> np.ndarray:
    """
    BT.601 luminance of an (..., 3) array. Pixels with r == g == b come back
    as exactly that value.
    """
    rgb = np.asarray(rgb, dtype=np.float64)
    if rgb.shape[-1] != 3:
        raise DataError(f"Expected a trailing RGB axis, got shape {rgb.shape}")
    r, g, b = rgb[..., 0], rgb[..., 1], rgb[..., 2]
    luma = LUMA_WEIGHTS[0] * r + LUMA_WEIGHTS[1] * g + LUMA_WEIGHTS[2] * b
    gray = (r == g) & (g == b)
    return np.where(gray, r, luma)


def luminance_table(planes, tag: ChannelTag = ChannelTag.FUSED) -> BrightnessTable:
    stacked = np.stack([p.values for p in planes], axis=-1)
    return BrightnessTable(luminance(stacked), tag=tag)


def normalize(table: BrightnessTable) -> BrightnessTable:
    table.require_non_negative("normalize input")
    peak = float(table.values.max())
    if peak == 0.0:
        return table
    return table.with_values(table.values / peak, value_range=(0.0, 1.0))


def invert(table: BrightnessTable) -> BrightnessTable:
    table.require_unit_range("invert input")
    return table.with_values(1.0 - table.values, value_range=(0.0, 1.0))


def fit_to_unit(table: BrightnessTable) -> BrightnessTable:
    """Scale down by the maximum only when the table leaves [0, 1]."""
    if float(table.values.max()) <= 1.0:
        return table.with_values(table.values, value_range=(0.0, 1.0))
    return normalize(table)


def minmax_display(table: BrightnessTable) -> BrightnessTable:
    """Affine map min -> 0, max -> 1; a constant table maps to 0.5."""
    lo, hi = float(table.values.min()), float(table.values.max())
    if hi == lo:
        return table.with_values(np.full(table.shape, 0.5), value_range=(0.0, 1.0))
    scaled = np.clip((table.values - lo) / (hi - lo), 0.0, 1.0)
    return table.with_values(scaled, value_range=(0.0, 1.0))
