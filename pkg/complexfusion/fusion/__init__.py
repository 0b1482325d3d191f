from .additive import brightness_weights, channel_sum, simple_fuse, weighted_fuse
from .complex import (
    amplitude,
    cos2phi_image,
    fuse_multi,
    make_complex,
    phase_angle,
    reconstruct_im,
    reconstruct_re,
    sin2phi_image,
)
from .phase import count_indeterminate, phi_image, tangent_image
from .methods import FUSION_METHODS, FusionMethod, FusionOutcome, MethodTag, run_method
from .color import fuse_rgb
