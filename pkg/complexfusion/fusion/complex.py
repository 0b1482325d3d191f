import typing as ty

import numpy as np

from complexfusion.fusion.additive import channel_sum, require_channel_pair
from complexfusion.types.fusion import ChannelWeights, ComplexImage, Ordering
from complexfusion.types.raster import BrightnessTable, ChannelTag, observed_range


def make_complex(
    u: BrightnessTable,
    v: BrightnessTable,
    ordering: Ordering = Ordering.NEG,
    weights: ty.Optional[ChannelWeights] = None,
) -> ComplexImage:
    """
    Build u + iv (NEG) or v + iu (POS) from the weighted partial images.
    """
    require_channel_pair(u, v)
    weights = weights or ChannelWeights.default()
    weighted_u = BrightnessTable(weights.w_a * u.values, tag=ChannelTag.VISIBLE_A)
    weighted_v = BrightnessTable(weights.w_b * v.values, tag=ChannelTag.INFRARED_B)
    if Ordering(ordering) == Ordering.NEG:
        return ComplexImage(re=weighted_u, im=weighted_v, ordering=Ordering.NEG)
    return ComplexImage(re=weighted_v, im=weighted_u, ordering=Ordering.POS)


def _fused(values: np.ndarray) -> BrightnessTable:
    return BrightnessTable(values, tag=ChannelTag.FUSED, value_range=observed_range(values))


def amplitude(c: ComplexImage) -> BrightnessTable:
    return _fused(np.abs(c.as_array()))


def phase_angle(c: ComplexImage) -> BrightnessTable:
    """Unscaled phase in [0, pi/2]; a 0 + 0i pixel has phase 0."""
    return _fused(np.angle(c.as_array()))


def reconstruct_re(c: ComplexImage) -> BrightnessTable:
    return _fused(amplitude(c).values * np.cos(phase_angle(c).values))


def reconstruct_im(c: ComplexImage) -> BrightnessTable:
    return _fused(amplitude(c).values * np.sin(phase_angle(c).values))


def sin2phi_image(c: ComplexImage) -> BrightnessTable:
    """Raw 2*Re*Im, which equals |psi|^2 sin(2 phi)."""
    return _fused(2.0 * c.re.values * c.im.values)


def cos2phi_image(c: ComplexImage) -> BrightnessTable:
    """Raw, signed Re^2 - Im^2, which equals |psi|^2 cos(2 phi)."""
    return _fused(c.re.values**2 - c.im.values**2)


def fuse_multi(
    us: ty.Sequence[BrightnessTable],
    vs: ty.Sequence[BrightnessTable],
    wu: ty.Optional[ty.Sequence[float]] = None,
    wv: ty.Optional[ty.Sequence[float]] = None,
    ordering: Ordering = Ordering.NEG,
    weights: ty.Optional[ChannelWeights] = None,
) -> ComplexImage:
    """
    Several exposures per channel: each channel is summed on its own, then
    the two sums are combined as a complex image.
    """
    u = channel_sum(us, wu).with_tag(ChannelTag.VISIBLE_A)
    v = channel_sum(vs, wv).with_tag(ChannelTag.INFRARED_B)
    return make_complex(u, v, ordering=ordering, weights=weights)
