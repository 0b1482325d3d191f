from .io import ImageFormat, infer_format, load_image, load_planes, quantize, save_image, save_rgb_image
from .ops import fit_to_unit, invert, luminance, minmax_display, normalize
