import os
import typing as ty
from enum import Enum

import numpy as np

from complexfusion.errors import ImageNotFound, IoFailure, MalformedImage, UsageError
from complexfusion.raster import netpbm, png_io
from complexfusion.raster.ops import luminance
from complexfusion.types.raster import BrightnessTable, ChannelTag
from complexfusion.utils.logging import logger


class ImageFormat(str, Enum):
    PGM = "PGM"
    PNG = "PNG"


SUFFIX_FORMATS = {
    ".pgm": ImageFormat.PGM,
    ".pnm": ImageFormat.PGM,
    ".ppm": ImageFormat.PGM,
    ".png": ImageFormat.PNG,
}
PNG_SIGNATURE = b"\x89PNG\r\n\x1a\n"


def infer_format(path: str, sniff: bool = False) -> ImageFormat:
    suffix = os.path.splitext(path)[1].lower()
    if suffix in SUFFIX_FORMATS:
        return SUFFIX_FORMATS[suffix]
    if sniff and os.path.exists(path):
        with open(path, "rb") as f:
            head = f.read(8)
        if head.startswith(PNG_SIGNATURE):
            return ImageFormat.PNG
        if head[:2] in netpbm.MAGIC_LAYOUT:
            return ImageFormat.PGM
        raise MalformedImage(f"Cannot recognise the image format of {path}")
    raise UsageError(f"Cannot infer an image format from {path!r}; use .pgm, .ppm or .png")


def _read_samples(path: str, format: ty.Optional[ImageFormat]) -> ty.Tuple[np.ndarray, int]:
    if not os.path.isfile(path):
        raise ImageNotFound(f"Image file not found: {path}")
    format = ImageFormat(format) if format else infer_format(path, sniff=True)
    try:
        if format == ImageFormat.PNG:
            return png_io.read(path)
        return netpbm.read(path)
    except OSError as e:
        raise ImageNotFound(f"Cannot read {path}: {e}") from e


def load_image(
    path: str,
    format: ty.Optional[ImageFormat] = None,
    tag: ChannelTag = ChannelTag.FUSED,
) -> BrightnessTable:
    """
    Load a grayscale or colour image as a [0, 1] brightness table. Colour
    input is converted to BT.601 luminance before scaling by the maxval.
    """
    samples, maxval = _read_samples(path, format)
    if samples.ndim == 3:
        samples = luminance(samples)
    table = BrightnessTable(samples / float(maxval), tag=tag)
    logger.debug(f"Loaded {path}: {table.width}x{table.height}, maxval {maxval}")
    return table


def load_planes(
    path: str,
    format: ty.Optional[ImageFormat] = None,
    tag: ChannelTag = ChannelTag.FUSED,
) -> ty.Tuple[BrightnessTable, BrightnessTable, BrightnessTable]:
    """Load R, G, B planes; a grayscale file yields three identical planes."""
    samples, maxval = _read_samples(path, format)
    if samples.ndim == 2:
        samples = np.stack([samples] * 3, axis=-1)
    return tuple(
        BrightnessTable(samples[..., i] / float(maxval), tag=tag) for i in range(3)
    )


def quantize(values: np.ndarray, bit_depth: int) -> np.ndarray:
    """round-half-up of value * (2^bit_depth - 1)"""
    if bit_depth not in (8, 16):
        raise UsageError(f"Bit depth must be 8 or 16, got {bit_depth}")
    maxval = 2**bit_depth - 1
    return np.floor(np.asarray(values, dtype=np.float64) * maxval + 0.5).astype(np.int64)


def _write_samples(samples: np.ndarray, path: str, format, bit_depth: int, plain: bool):
    format = ImageFormat(format) if format else infer_format(path)
    try:
        if format == ImageFormat.PNG:
            png_io.write(path, samples, bit_depth)
        else:
            netpbm.write(path, samples, 2**bit_depth - 1, plain=plain)
    except OSError as e:
        raise IoFailure(f"Cannot write {path}: {e}") from e
    logger.debug(f"Wrote {path} ({format.value}, {bit_depth}-bit)")


def save_image(
    table: BrightnessTable,
    path: str,
    format: ty.Optional[ImageFormat] = None,
    bit_depth: int = 8,
    plain: bool = False,
):
    table.require_unit_range("saved image")
    _write_samples(quantize(table.values, bit_depth), path, format, bit_depth, plain)


def save_rgb_image(
    planes: ty.Sequence[BrightnessTable],
    path: str,
    format: ty.Optional[ImageFormat] = None,
    bit_depth: int = 8,
    plain: bool = False,
):
    for plane in planes:
        plane.require_unit_range("saved image plane")
    samples = np.stack([quantize(p.values, bit_depth) for p in planes], axis=-1)
    _write_samples(samples, path, format, bit_depth, plain)
