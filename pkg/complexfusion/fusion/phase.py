"""
Phase images of the complex construction: the t-image (tangent of the phase)
and the phi-image (the phase itself, scaled by 2/pi into [0, 1]).
"""
import math
import typing as ty

import numpy as np

from complexfusion.errors import DivisionByZero
from complexfusion.fusion.additive import require_channel_pair
from complexfusion.types.fusion import Epsilon, Ordering, as_epsilon
from complexfusion.types.raster import BrightnessTable, ChannelTag, observed_range
from complexfusion.utils.logging import logger


def ratio_terms(
    u: BrightnessTable, v: BrightnessTable, ordering: Ordering
) -> ty.Tuple[np.ndarray, np.ndarray]:
    """(numerator, denominator) of the phase ratio: v/u for NEG, u/v for POS."""
    require_channel_pair(u, v)
    if Ordering(ordering) == Ordering.NEG:
        return v.values, u.values
    return u.values, v.values


def tangent_image(
    u: BrightnessTable,
    v: BrightnessTable,
    ordering: Ordering = Ordering.NEG,
    eps: ty.Union[Epsilon, float] = 0.0,
) -> BrightnessTable:
    """Raw t-image numerator / (denominator + eps); normalize() it for display."""
    eps = as_epsilon(eps)
    numerator, denominator = ratio_terms(u, v, ordering)
    if eps.value == 0.0:
        zeros = int(np.count_nonzero(denominator == 0.0))
        if zeros:
            raise DivisionByZero(
                f"t-image with epsilon 0 has {zeros} zero-brightness denominator pixels"
            )
    raw = numerator / (denominator + eps.value)
    return BrightnessTable(raw, tag=ChannelTag.FUSED, value_range=observed_range(raw))


def count_indeterminate(
    u: BrightnessTable,
    v: BrightnessTable,
    ordering: Ordering = Ordering.NEG,
    eps: ty.Union[Epsilon, float] = 0.0,
) -> int:
    """Pixels where both ratio terms are 0 and no epsilon resolves the 0/0."""
    if as_epsilon(eps).value > 0.0:
        return 0
    numerator, denominator = ratio_terms(u, v, ordering)
    return int(np.count_nonzero((numerator == 0.0) & (denominator == 0.0)))


def phi_image(
    u: BrightnessTable,
    v: BrightnessTable,
    ordering: Ordering = Ordering.NEG,
    eps: ty.Union[Epsilon, float] = 0.0,
) -> BrightnessTable:
    """
    arctan(numerator / (denominator + eps)) scaled by 2/pi.

    With eps = 0 a zero denominator under a positive numerator gives pi/2
    (scaled 1); a 0/0 pixel is set to 0 and counted in a warning.
    """
    eps = as_epsilon(eps)
    numerator, denominator = ratio_terms(u, v, ordering)
    phi = np.arctan2(numerator, denominator + eps.value)
    scaled = np.clip(phi / (math.pi / 2.0), 0.0, 1.0)

    indeterminate = count_indeterminate(u, v, ordering, eps)
    if indeterminate:
        logger.warning(
            f"phi-image: {indeterminate} pixels are 0/0 at epsilon 0 and were set to 0"
        )
    return BrightnessTable(scaled, tag=ChannelTag.FUSED, value_range=(0.0, 1.0))
