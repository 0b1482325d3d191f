import math
from enum import Enum
from dataclasses import dataclass
from typing import Any, Sequence, Tuple

import numpy as np

from complexfusion.errors import DataError, DimensionMismatch, NegativeValue, RangeViolation


class ChannelTag(str, Enum):
    VISIBLE_A = "VisibleA"
    INFRARED_B = "InfraredB"
    FUSED = "Fused"


@dataclass(frozen=True, eq=False)
class BrightnessTable:
    """
    Immutable 2-D grid of brightness values, stored row-major as a float64
    array of shape (height, width). Coordinates are (x, y) = (column, row).
    """

    values: np.ndarray
    tag: ChannelTag = ChannelTag.FUSED
    value_range: Tuple[float, float] = (0.0, 1.0)

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64, copy=True)
        if values.ndim != 2 or values.shape[0] < 1 or values.shape[1] < 1:
            raise DataError(
                f"Brightness table must be a non-empty 2-D grid, got shape {values.shape}"
            )
        if not np.all(np.isfinite(values)):
            raise DataError("Brightness table contains NaN or infinite values")
        lo, hi = (float(self.value_range[0]), float(self.value_range[1]))
        if lo > hi:
            raise DataError(f"Declared value range is inverted: ({lo}, {hi})")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "tag", ChannelTag(self.tag))
        object.__setattr__(self, "value_range", (lo, hi))

    @property
    def width(self) -> int:
        return int(self.values.shape[1])

    @property
    def height(self) -> int:
        return int(self.values.shape[0])

    @property
    def shape(self) -> Tuple[int, int]:
        return self.values.shape

    @property
    def pixel_count(self) -> int:
        return int(self.values.size)

    def __getitem__(self, xy: Tuple[int, int]) -> float:
        x, y = xy
        return float(self.values[y, x])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BrightnessTable):
            return NotImplemented
        return (
            self.shape == other.shape
            and self.tag == other.tag
            and bool(np.array_equal(self.values, other.values))
        )

    __hash__ = None

    def with_tag(self, tag: ChannelTag) -> "BrightnessTable":
        return BrightnessTable(self.values, tag=tag, value_range=self.value_range)

    def with_values(self, values: np.ndarray, value_range=None) -> "BrightnessTable":
        """Same tag, new pixels. Range defaults to the observed min/max."""
        if value_range is None:
            value_range = observed_range(values)
        return BrightnessTable(values, tag=self.tag, value_range=value_range)

    def require_unit_range(self, what: str = "table"):
        if self.values.min() < 0.0 or self.values.max() > 1.0:
            raise RangeViolation(
                f"{what} values must lie in [0, 1], got [{self.values.min()}, {self.values.max()}]"
            )

    def require_non_negative(self, what: str = "table"):
        if self.values.min() < 0.0:
            raise NegativeValue(f"{what} has negative brightness {self.values.min()}")

    def to_list(self) -> list:
        return self.values.ravel().tolist()

    def to_dict(self) -> dict:
        return {
            "width": self.width,
            "height": self.height,
            "values": self.to_list(),
            "tag": self.tag.value,
            "value_range": list(self.value_range),
        }

    @staticmethod
    def from_values(
        width: int,
        height: int,
        values: Sequence[float],
        tag: ChannelTag = ChannelTag.FUSED,
        value_range: Tuple[float, float] = (0.0, 1.0),
    ) -> "BrightnessTable":
        if width < 1 or height < 1:
            raise DataError(f"Table dimensions must be positive, got {width}x{height}")
        if len(values) != width * height:
            raise DataError(
                f"Expected {width * height} values for a {width}x{height} table, got {len(values)}"
            )
        grid = np.asarray(values, dtype=np.float64).reshape(height, width)
        return BrightnessTable(grid, tag=tag, value_range=value_range)

    @staticmethod
    def from_dict(obj: Any) -> "BrightnessTable":
        _width = int(obj.get("width"))
        _height = int(obj.get("height"))
        _values = [float(y) for y in obj.get("values")]
        _tag = ChannelTag(obj.get("tag", ChannelTag.FUSED.value))
        _range = tuple(float(y) for y in obj.get("value_range", (0.0, 1.0)))
        return BrightnessTable.from_values(_width, _height, _values, _tag, _range)

    @staticmethod
    def constant(
        width: int, height: int, value: float, tag: ChannelTag = ChannelTag.FUSED
    ) -> "BrightnessTable":
        return BrightnessTable(
            np.full((height, width), float(value)),
            tag=tag,
            value_range=(min(0.0, value), max(1.0, value)),
        )


def observed_range(values: np.ndarray) -> Tuple[float, float]:
    values = np.asarray(values, dtype=np.float64)
    lo, hi = float(values.min()), float(values.max())
    if not (math.isfinite(lo) and math.isfinite(hi)):
        return (0.0, 1.0)
    return (lo, hi)


def require_same_shape(*tables: BrightnessTable):
    shapes = {t.shape for t in tables}
    if len(shapes) > 1:
        dims = ", ".join(f"{t.width}x{t.height}" for t in tables)
        raise DimensionMismatch(f"Tables must share dimensions, got {dims}")
