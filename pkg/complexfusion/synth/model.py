"""
Model partial images: a small target square on a larger square, painted on
a canvas. Each channel sees the target with a different brightness so
every contrast claim can be checked in closed form.
"""
import typing as ty
from dataclasses import dataclass, field

import numpy as np

from complexfusion.errors import DataError, GeometryViolation, RangeViolation
from complexfusion.types.metrics import PixelPair
from complexfusion.types.raster import BrightnessTable, ChannelTag

CANVAS = (64, 64)
BIG_SQUARE_SIDE = 32
SMALL_SQUARE_SIDE = 8

TARGET_BRIGHTNESS_U = 0.4
SURROUND_BRIGHTNESS_U = 0.5
TARGET_BRIGHTNESS_V = 0.5
SURROUND_BRIGHTNESS_V = 0.4

DARK_BAND_ROWS = 8


@dataclass(frozen=True)
class Rect:
    x: int
    y: int
    width: int
    height: int

    @property
    def empty(self) -> bool:
        return self.width == 0 or self.height == 0

    def contains(self, other: "Rect") -> bool:
        return (
            self.x <= other.x
            and self.y <= other.y
            and other.x + other.width <= self.x + self.width
            and other.y + other.height <= self.y + self.height
        )

    @staticmethod
    def centered(canvas: ty.Tuple[int, int], side: int) -> "Rect":
        width, height = canvas
        return Rect((width - side) // 2, (height - side) // 2, side, side)


@dataclass(frozen=True)
class Fill:
    rect: Rect
    brightness: float


@dataclass(frozen=True)
class ModelSpec:
    """
    canvas is (width, height). Painting order is background, big square,
    small square; later rectangles overwrite earlier ones.
    """

    big_square: Fill
    small_square: Fill
    canvas: ty.Tuple[int, int] = CANVAS
    background: float = 0.0
    extra: ty.Tuple[Fill, ...] = field(default_factory=tuple)

    def validate(self):
        width, height = self.canvas
        if width < 1 or height < 1:
            raise GeometryViolation(f"Canvas must be non-empty, got {width}x{height}")
        canvas_rect = Rect(0, 0, width, height)
        for fill in (self.big_square, self.small_square, *self.extra):
            if min(fill.rect.width, fill.rect.height) < 0:
                raise GeometryViolation(f"Rectangle {fill.rect} has a negative size")
            if not fill.rect.empty and not canvas_rect.contains(fill.rect):
                raise GeometryViolation(f"Rectangle {fill.rect} leaves the {width}x{height} canvas")
        if not self.small_square.rect.empty and not self.big_square.rect.contains(
            self.small_square.rect
        ):
            raise GeometryViolation(
                f"Small square {self.small_square.rect} is not inside {self.big_square.rect}"
            )
        brightnesses = [self.background, self.big_square.brightness, self.small_square.brightness]
        brightnesses += [fill.brightness for fill in self.extra]
        if any(not 0.0 <= b <= 1.0 for b in brightnesses):
            raise RangeViolation(f"Model brightnesses must lie in [0, 1], got {brightnesses}")


def _paint_into(grid: np.ndarray, fill: Fill):
    r = fill.rect
    grid[r.y : r.y + r.height, r.x : r.x + r.width] = fill.brightness


def generate_model(spec: ModelSpec, tag: ChannelTag = ChannelTag.FUSED) -> BrightnessTable:
    spec.validate()
    width, height = spec.canvas
    grid = np.full((height, width), float(spec.background))
    for fill in (spec.big_square, spec.small_square, *spec.extra):
        _paint_into(grid, fill)
    return BrightnessTable(grid, tag=tag)


def paint(table: BrightnessTable, rect: Rect, brightness: float) -> BrightnessTable:
    """Copy of table with rect filled at the given brightness."""
    if not 0.0 <= brightness <= 1.0:
        raise RangeViolation(f"Brightness must lie in [0, 1], got {brightness}")
    if not Rect(0, 0, table.width, table.height).contains(rect):
        raise GeometryViolation(f"Rectangle {rect} leaves the {table.width}x{table.height} table")
    grid = np.array(table.values)
    _paint_into(grid, Fill(rect, brightness))
    return BrightnessTable(grid, tag=table.tag, value_range=table.value_range)


def model_spec(target: float, surround: float, canvas: ty.Tuple[int, int] = CANVAS) -> ModelSpec:
    """The outer field takes the surround brightness, so the image has two levels."""
    return ModelSpec(
        big_square=Fill(Rect.centered(canvas, BIG_SQUARE_SIDE), surround),
        small_square=Fill(Rect.centered(canvas, SMALL_SQUARE_SIDE), target),
        canvas=canvas,
        background=surround,
    )


def target_edge(canvas: ty.Tuple[int, int] = CANVAS) -> PixelPair:
    """Last target pixel of the centre row and its right-hand neighbour."""
    small = Rect.centered(canvas, SMALL_SQUARE_SIDE)
    x = small.x + small.width - 1
    y = small.y + small.height // 2
    return PixelPair((x, y), (x + 1, y))


TARGET_EDGE = target_edge()


def model_pair_default() -> ty.Tuple[BrightnessTable, BrightnessTable]:
    u = generate_model(
        model_spec(TARGET_BRIGHTNESS_U, SURROUND_BRIGHTNESS_U), tag=ChannelTag.VISIBLE_A
    )
    v = generate_model(
        model_spec(TARGET_BRIGHTNESS_V, SURROUND_BRIGHTNESS_V), tag=ChannelTag.INFRARED_B
    )
    return u, v


def contrast_pair(k: float) -> ty.Tuple[BrightnessTable, BrightnessTable]:
    """
    Model pair whose target-edge contrasts are k in channel A and -k in
    channel B. The surround of u and the target of v keep brightness 0.5.
    """
    if not -2.0 < k < 2.0:
        raise DataError(f"Target contrast must lie in (-2, 2), got {k}")
    dim = SURROUND_BRIGHTNESS_U * (2.0 - k) / (2.0 + k)
    u = generate_model(model_spec(dim, SURROUND_BRIGHTNESS_U), tag=ChannelTag.VISIBLE_A)
    v = generate_model(model_spec(TARGET_BRIGHTNESS_V, dim), tag=ChannelTag.INFRARED_B)
    return u, v


def model_pair_with_dark_band(
    rows: int = DARK_BAND_ROWS,
) -> ty.Tuple[BrightnessTable, BrightnessTable]:
    """Default pair with the top rows black in both channels."""
    u, v = model_pair_default()
    band = Rect(0, 0, u.width, rows)
    return paint(u, band, 0.0), paint(v, band, 0.0)
