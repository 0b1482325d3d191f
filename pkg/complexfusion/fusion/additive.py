import math
import typing as ty

import numpy as np

from complexfusion.errors import (
    ChannelTagMismatch,
    DataError,
    EmptySequence,
    WeightLengthMismatch,
)
from complexfusion.types.fusion import ChannelWeights
from complexfusion.types.raster import BrightnessTable, ChannelTag, require_same_shape
from complexfusion.utils.logging import logger


def require_channel_pair(u: BrightnessTable, v: BrightnessTable):
    """u must come from the visible channel A and v from the infrared channel B."""
    require_same_shape(u, v)
    if u.tag != ChannelTag.VISIBLE_A or v.tag != ChannelTag.INFRARED_B:
        raise ChannelTagMismatch(
            f"Fusion needs a {ChannelTag.VISIBLE_A.value} and an {ChannelTag.INFRARED_B.value} "
            f"input, got {u.tag.value} and {v.tag.value}"
        )


def simple_fuse(u: BrightnessTable, v: BrightnessTable) -> BrightnessTable:
    require_channel_pair(u, v)
    return BrightnessTable(u.values + v.values, tag=ChannelTag.FUSED, value_range=(0.0, 2.0))


def weighted_fuse(
    u: BrightnessTable,
    v: BrightnessTable,
    weights: ty.Union[ChannelWeights, ty.Tuple[float, float]],
) -> BrightnessTable:
    """
    Pixel-wise w_a*u + w_b*v. Any non-negative pair is accepted here; the
    unit-norm constraint only binds the complex construction.
    """
    require_channel_pair(u, v)
    w_a, w_b = weights.as_tuple() if isinstance(weights, ChannelWeights) else weights
    w_a, w_b = float(w_a), float(w_b)
    if w_a < 0 or w_b < 0 or not (math.isfinite(w_a) and math.isfinite(w_b)):
        raise DataError(f"Weights must be finite and non-negative, got ({w_a}, {w_b})")
    return BrightnessTable(
        w_a * u.values + w_b * v.values,
        tag=ChannelTag.FUSED,
        value_range=(0.0, w_a + w_b),
    )


def channel_sum(
    images: ty.Sequence[BrightnessTable],
    weights: ty.Optional[ty.Sequence[float]] = None,
) -> BrightnessTable:
    """
    Weighted sum of several images from one channel. Without explicit
    weights every image gets 1/n.
    """
    images = list(images)
    if not images:
        raise EmptySequence("channel_sum needs at least one image")
    require_same_shape(*images)
    if weights is None:
        weights = [1.0 / len(images)] * len(images)
    weights = [float(w) for w in weights]
    if len(weights) != len(images):
        raise WeightLengthMismatch(
            f"Got {len(weights)} weights for {len(images)} images"
        )
    if any(w < 0 or not math.isfinite(w) for w in weights):
        raise DataError(f"Channel weights must be finite and non-negative, got {weights}")

    total = np.zeros(images[0].shape, dtype=np.float64)
    for image, w in zip(images, weights):
        total += w * image.values
    tags = {image.tag for image in images}
    tag = tags.pop() if len(tags) == 1 else ChannelTag.FUSED
    return BrightnessTable(total, tag=tag, value_range=(0.0, max(1.0, sum(weights))))


def brightness_weights(u: BrightnessTable, v: BrightnessTable) -> ChannelWeights:
    """Cross-channel weights proportional to each channel's mean brightness."""
    mean_u, mean_v = float(u.values.mean()), float(v.values.mean())
    if mean_u <= 0 and mean_v <= 0:
        logger.warning("Both channels are black; falling back to equal weights")
        return ChannelWeights.default()
    weights, _ = ChannelWeights.normalized(max(mean_u, 0.0), max(mean_v, 0.0))
    return weights
