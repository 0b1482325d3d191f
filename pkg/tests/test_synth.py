import numpy as np
import pytest

from complexfusion.errors import DataError, GeometryViolation, RangeViolation
from complexfusion.fusion import simple_fuse, tangent_image
from complexfusion.metrics import contrast_map, local_contrast, predict_t_contrast
from complexfusion.synth import (
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
from complexfusion.types.fusion import Ordering
from complexfusion.types.raster import ChannelTag
from tests.helpers import CLOSE_IN_VALUE


def test_default_pair_levels():
    u, v = model_pair_default()
    assert u.tag == ChannelTag.VISIBLE_A and v.tag == ChannelTag.INFRARED_B
    assert (u.width, u.height) == (64, 64)
    assert u[TARGET_EDGE.p] == 0.4 and u[TARGET_EDGE.q] == 0.5
    assert v[TARGET_EDGE.p] == 0.5 and v[TARGET_EDGE.q] == 0.4
    assert sorted(np.unique(u.values).tolist()) == [0.4, 0.5]
    assert int(np.count_nonzero(u.values == 0.4)) == 64


def test_target_edge_contrasts():
    u, v = model_pair_default()
    assert local_contrast(u, TARGET_EDGE) == CLOSE_IN_VALUE(2 / 9, 1e-12)
    assert local_contrast(v, TARGET_EDGE) == CLOSE_IN_VALUE(-2 / 9, 1e-12)
    assert local_contrast(simple_fuse(u, v), TARGET_EDGE) == CLOSE_IN_VALUE(0.0, 1e-12)
    t_neg = tangent_image(u, v, Ordering.NEG, 0.0)
    assert local_contrast(t_neg, TARGET_EDGE) == CLOSE_IN_VALUE(-18 / 41, 1e-12)


def test_generate_model_paints_in_order():
    spec = ModelSpec(
        big_square=Fill(Rect(1, 1, 4, 4), 0.5),
        small_square=Fill(Rect(2, 2, 1, 1), 0.9),
        canvas=(6, 6),
    )
    t = generate_model(spec)
    assert t[0, 0] == 0.0 and t[1, 1] == 0.5 and t[2, 2] == 0.9
    assert generate_model(spec) == t


def test_zero_size_small_square():
    spec = ModelSpec(
        big_square=Fill(Rect(1, 1, 4, 4), 0.5),
        small_square=Fill(Rect(0, 0, 0, 0), 0.9),
        canvas=(6, 6),
    )
    assert sorted(np.unique(generate_model(spec).values).tolist()) == [0.0, 0.5]


@pytest.mark.parametrize(
    "big, small, error",
    [
        (Fill(Rect(1, 1, 4, 4), 0.5), Fill(Rect(4, 4, 2, 2), 0.9), GeometryViolation),
        (Fill(Rect(3, 3, 4, 4), 0.5), Fill(Rect(3, 3, 1, 1), 0.9), GeometryViolation),
        (Fill(Rect(1, 1, 4, 4), 1.5), Fill(Rect(2, 2, 1, 1), 0.9), RangeViolation),
    ],
)
def test_model_spec_violations(big, small, error):
    with pytest.raises(error):
        generate_model(ModelSpec(big_square=big, small_square=small, canvas=(6, 6)))


def test_swapping_levels_negates_edge_contrast():
    u = generate_model(model_spec(0.4, 0.5))
    swapped = generate_model(model_spec(0.5, 0.4))
    assert local_contrast(swapped, TARGET_EDGE) == -local_contrast(u, TARGET_EDGE)


def test_model_contrast_is_nonzero_only_on_edges():
    u, _ = model_pair_default()
    for offset in [(1, 0), (0, 1)]:
        ys, xs = np.nonzero(contrast_map(u, offset).table.values)
        for x, y in zip(xs, ys):
            assert 27 <= x <= 35 and 27 <= y <= 35


@pytest.mark.parametrize("k", [0.1, 0.2, 1 / 3, 2 / 9])
def test_contrast_pair(k):
    u, v = contrast_pair(k)
    assert local_contrast(u, TARGET_EDGE) == CLOSE_IN_VALUE(k, 1e-12)
    assert local_contrast(v, TARGET_EDGE) == CLOSE_IN_VALUE(-k, 1e-12)
    with pytest.raises(DataError):
        contrast_pair(2.0)


def test_dark_band_and_paint():
    u, v = model_pair_with_dark_band()
    assert not u.values[:8].any() and not v.values[:8].any()
    assert u.values[8:].min() == 0.4
    assert u.tag == ChannelTag.VISIBLE_A
    with pytest.raises(GeometryViolation):
        paint(u, Rect(60, 60, 8, 8), 0.0)
    with pytest.raises(RangeViolation):
        paint(u, Rect(0, 0, 2, 2), -0.5)


def test_model_predictions_match():
    u, v = model_pair_default()
    exact, approx = predict_t_contrast(
        local_contrast(u, TARGET_EDGE), local_contrast(v, TARGET_EDGE), Ordering.NEG
    )
    t_neg = tangent_image(u, v, Ordering.NEG, 0.0)
    assert local_contrast(t_neg, TARGET_EDGE) == CLOSE_IN_VALUE(exact, 1e-12)
    assert approx == CLOSE_IN_VALUE(-4 / 9, 1e-12)
