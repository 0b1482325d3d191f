from .contrast import (
    approximation_bound,
    contrast_map,
    local_contrast,
    measure_contrast,
    pair_contrast,
    predict_simple_contrast,
    predict_t_contrast,
)
from .quality import (
    DEFAULT_BINS,
    assess,
    brightness_profile,
    entropy_from_counts,
    histogram,
    mean_abs_difference,
    occupied_bins,
    pearson_correlation,
    shannon_entropy,
)
