from .model import (
    TARGET_EDGE,
    Fill,
    ModelSpec,
    Rect,
    contrast_pair,
    generate_model,
    model_pair_default,
    model_pair_with_dark_band,
    model_spec,
    paint,
)
