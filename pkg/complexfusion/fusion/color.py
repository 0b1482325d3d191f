import typing as ty

from complexfusion.errors import DimensionMismatch
from complexfusion.fusion.methods import FusionMethod, FusionOutcome, run_method
from complexfusion.types.raster import BrightnessTable, ChannelTag

RGB = ("r", "g", "b")


def fuse_rgb(
    method: FusionMethod,
    u_planes: ty.Sequence[BrightnessTable],
    v_planes: ty.Sequence[BrightnessTable],
) -> ty.List[FusionOutcome]:
    """
    Apply a scalar fusion method to R, G and B independently. Each plane is
    display-normalized on its own, which gives the pseudo-colour look.
    """
    if len(u_planes) != len(RGB) or len(v_planes) != len(RGB):
        raise DimensionMismatch(
            f"RGB fusion needs three planes per channel, got {len(u_planes)} and {len(v_planes)}"
        )
    return [
        run_method(
            method,
            u_plane.with_tag(ChannelTag.VISIBLE_A),
            v_plane.with_tag(ChannelTag.INFRARED_B),
        )
        for u_plane, v_plane in zip(u_planes, v_planes)
    ]
