import math

import numpy as np
import pytest

from complexfusion.errors import (
    ChannelTagMismatch,
    DataError,
    DimensionMismatch,
    DivisionByZero,
    EmptySequence,
    InvalidEpsilon,
    WeightLengthMismatch,
)
from complexfusion.fusion import (
    amplitude,
    brightness_weights,
    channel_sum,
    cos2phi_image,
    count_indeterminate,
    fuse_multi,
    fuse_rgb,
    make_complex,
    phase_angle,
    phi_image,
    reconstruct_im,
    reconstruct_re,
    run_method,
    simple_fuse,
    sin2phi_image,
    tangent_image,
    weighted_fuse,
)
from complexfusion.fusion.methods import FusionMethod, MethodTag, numerator_image
from complexfusion.types.fusion import ChannelWeights, ComplexImage, Epsilon, Ordering
from complexfusion.types.raster import ChannelTag
from tests.helpers import infrared, random_table, table, visible

NEG, POS = Ordering.NEG, Ordering.POS
HALF = math.sqrt(0.5)


def random_pair(seed, low=0.05):
    u = random_table(seed, low=low, tag=ChannelTag.VISIBLE_A)
    v = random_table(seed + 1000, low=low, tag=ChannelTag.INFRARED_B)
    return u, v


def test_channel_weights_constraint():
    w = ChannelWeights.default()
    assert math.hypot(w.w_a, w.w_b) == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(ValueError):
        ChannelWeights(w_a=1.0, w_b=1.0)
    with pytest.raises(ValueError):
        ChannelWeights(w_a=-1.0, w_b=0.0)
    weights, renormalized = ChannelWeights.normalized(3.0, 4.0)
    assert renormalized and weights.as_tuple() == pytest.approx((0.6, 0.8))
    _, renormalized = ChannelWeights.normalized(1.0, 0.0)
    assert not renormalized
    with pytest.raises(DataError):
        ChannelWeights.normalized(0.0, 0.0)


def test_epsilon_must_be_non_negative():
    with pytest.raises(ValueError):
        Epsilon(value=-0.1)
    with pytest.raises(InvalidEpsilon):
        tangent_image(visible([[0.5]]), infrared([[0.5]]), NEG, -1.0)
    with pytest.raises(InvalidEpsilon):
        Epsilon(value=0.0).require_regularizing()


def test_simple_fuse():
    out = simple_fuse(visible([[0.2]]), infrared([[0.3]]))
    assert out.to_list() == [0.5]
    assert out.value_range == (0.0, 2.0)
    assert out.tag == ChannelTag.FUSED
    v = infrared([[0.1, 0.7]])
    assert simple_fuse(visible([[0.0, 0.0]]), v).to_list() == v.to_list()


def test_simple_fuse_does_not_clamp():
    assert simple_fuse(visible([[0.9]]), infrared([[0.8]])).to_list() == [pytest.approx(1.7)]


def test_fusion_checks_shapes_and_tags():
    with pytest.raises(DimensionMismatch):
        simple_fuse(visible([[0.1, 0.2]]), infrared([[0.1]]))
    with pytest.raises(ChannelTagMismatch):
        simple_fuse(infrared([[0.1]]), visible([[0.1]]))
    with pytest.raises(ChannelTagMismatch):
        make_complex(table([[0.1]]), infrared([[0.1]]), NEG)


@pytest.mark.parametrize(
    "weights, expected",
    [((HALF, HALF), 0.8 * HALF), ((1.0, 0.0), 0.4), ((0.0, 1.0), 0.4)],
)
def test_weighted_fuse(weights, expected):
    out = weighted_fuse(visible([[0.4]]), infrared([[0.4]]), weights)
    assert out.to_list() == [pytest.approx(expected, abs=1e-15)]


def test_weighted_fuse_isolates_channels():
    u, v = random_pair(1)
    assert weighted_fuse(u, v, (1.0, 0.0)).to_list() == u.to_list()
    assert weighted_fuse(u, v, ChannelWeights(w_a=0.0, w_b=1.0)).to_list() == v.to_list()
    with pytest.raises(DataError):
        weighted_fuse(u, v, (-0.5, 1.0))


def test_channel_sum():
    t = random_table(2)
    assert channel_sum([t], [1.0]) == t
    assert channel_sum([t, t], [0.5, 0.5]).to_list() == t.to_list()
    mix = channel_sum([table([[0.2]]), table([[0.6]])], [0.25, 0.75])
    assert mix.to_list() == [pytest.approx(0.5)]
    assert channel_sum([table([[0.2]]), table([[0.6]])]).to_list() == [pytest.approx(0.4)]


def test_channel_sum_errors():
    with pytest.raises(EmptySequence):
        channel_sum([])
    with pytest.raises(WeightLengthMismatch):
        channel_sum([table([[0.2]])], [0.5, 0.5])
    with pytest.raises(DimensionMismatch):
        channel_sum([table([[0.2]]), table([[0.2, 0.3]])])


def test_make_complex_orderings():
    u, v = visible([[0.4]]), infrared([[0.5]])
    neg = make_complex(u, v, NEG)
    assert neg.re.to_list() == [pytest.approx(0.4 * HALF)]
    assert neg.im.to_list() == [pytest.approx(0.5 * HALF)]
    pos = make_complex(u, v, POS)
    assert pos.re == neg.im and pos.im == neg.re
    assert pos.ordering == POS


def test_complex_image_rejects_negative_parts():
    with pytest.raises(DataError):
        ComplexImage(re=table([[-0.1]]), im=table([[0.1]]), ordering=NEG)


def test_amplitude():
    c = ComplexImage(re=table([[0.3]]), im=table([[0.4]]), ordering=NEG)
    assert amplitude(c).to_list() == [pytest.approx(0.5)]
    c = ComplexImage(re=table([[0.3, 0.9]]), im=table([[0.0, 0.0]]), ordering=NEG)
    assert amplitude(c).to_list() == [0.3, 0.9]
    u, v = random_pair(4)
    assert amplitude(make_complex(u, v, NEG)) == amplitude(make_complex(u, v, POS))


@pytest.mark.parametrize(
    "ordering, eps, u, v, expected",
    [
        (NEG, 0.0, 0.4, 0.5, 1.25),
        (POS, 0.0, 0.4, 0.5, 0.8),
        (NEG, 0.01, 0.0, 0.5, 50.0),
    ],
)
def test_tangent_image(ordering, eps, u, v, expected):
    out = tangent_image(visible([[u]]), infrared([[v]]), ordering, eps)
    assert out.to_list() == [pytest.approx(expected, rel=1e-12)]


def test_tangent_rejects_zero_denominator_without_epsilon():
    with pytest.raises(DivisionByZero):
        tangent_image(visible([[0.0, 0.3]]), infrared([[0.5, 0.5]]), NEG, 0.0)
    # the same pixel is fine for the positive ordering
    tangent_image(visible([[0.0, 0.3]]), infrared([[0.5, 0.5]]), POS, 0.0)


def test_tangent_orderings_are_reciprocal():
    u, v = random_pair(6)
    product = tangent_image(u, v, NEG).values * tangent_image(u, v, POS).values
    assert np.allclose(product, 1.0, rtol=0, atol=1e-12)


def test_tangent_is_monotone_in_epsilon():
    u, v = random_pair(7, low=0.0)
    previous = None
    for eps in (1e-5, 0.01, 0.2, 1.0, 2.0):
        raw = tangent_image(u, v, NEG, eps).values
        assert raw.min() >= 0
        if previous is not None:
            assert np.all(raw <= previous)
        previous = raw


def test_tangent_large_epsilon_limit():
    u, v = random_pair(8)
    eps = 1e4
    scaled = eps * tangent_image(u, v, NEG, eps).values
    bound = v.values.max() * u.values.max() / eps
    assert np.max(np.abs(scaled - v.values)) <= bound


def test_phi_image_values():
    assert phi_image(visible([[0.3]]), infrared([[0.3]]), NEG).to_list() == [pytest.approx(0.5)]
    assert phi_image(visible([[1.0]]), infrared([[0.0]]), NEG, 0.0).to_list() == [0.0]
    assert phi_image(visible([[0.0]]), infrared([[0.7]]), NEG, 0.0).to_list() == [1.0]


def test_phi_indeterminate_pixels_are_zero_and_counted():
    u, v = visible([[0.0, 0.5]]), infrared([[0.0, 0.5]])
    out = phi_image(u, v, NEG, 0.0)
    assert out.to_list()[0] == 0.0
    assert count_indeterminate(u, v, NEG, 0.0) == 1
    assert count_indeterminate(u, v, NEG, 0.01) == 0


def test_phi_is_always_in_unit_range():
    u, v = random_pair(9, low=0.0)
    for ordering in (NEG, POS):
        for eps in (0.0, 1e-5, 1.0):
            values = phi_image(u, v, ordering, eps).values
            assert values.min() >= 0.0 and values.max() <= 1.0


def test_sin2phi_and_cos2phi():
    c = ComplexImage(re=table([[0.3]]), im=table([[0.3]]), ordering=NEG)
    assert sin2phi_image(c).to_list() == [pytest.approx(2 * 0.3**2)]
    assert cos2phi_image(c).to_list() == [0.0]
    c = ComplexImage(re=table([[0.5]]), im=table([[0.0]]), ordering=NEG)
    assert sin2phi_image(c).to_list() == [0.0]
    assert cos2phi_image(c).to_list() == [0.25]

    u, v = random_pair(10)
    assert sin2phi_image(make_complex(u, v, NEG)) == sin2phi_image(make_complex(u, v, POS))
    neg = cos2phi_image(make_complex(u, v, NEG)).values
    pos = cos2phi_image(make_complex(u, v, POS)).values
    assert np.array_equal(pos, -neg)


def test_pythagorean_identity():
    u, v = random_pair(12)
    c = make_complex(u, v, NEG)
    lhs = sin2phi_image(c).values ** 2 + cos2phi_image(c).values ** 2
    assert np.allclose(lhs, amplitude(c).values ** 4, rtol=0, atol=1e-9)


def test_phase_angle_range():
    u, v = random_pair(13, low=0.0)
    phase = phase_angle(make_complex(u, v, NEG)).values
    assert phase.min() >= 0.0 and phase.max() <= math.pi / 2
    zero = ComplexImage(re=table([[0.0]]), im=table([[0.0]]), ordering=NEG)
    assert phase_angle(zero).to_list() == [0.0]
    assert reconstruct_re(zero).to_list() == [0.0]


def test_fuse_multi_reduces_to_make_complex():
    u, v = random_pair(14)
    single = fuse_multi([u], [v], [1.0], [1.0], NEG)
    direct = make_complex(u, v, NEG)
    assert single.re.to_list() == direct.re.to_list()
    assert single.im.to_list() == direct.im.to_list()
    doubled = fuse_multi([u, u], [v], [0.5, 0.5], [1.0], NEG)
    assert doubled.re.to_list() == direct.re.to_list()


def test_fuse_multi_phase():
    us = [visible([[0.2, 0.4], [0.6, 0.8]]), visible([[0.4, 0.4], [0.2, 0.2]])]
    vs = [infrared([[0.5, 0.1], [0.3, 0.9]])]
    c = fuse_multi(us, vs, [0.5, 0.5], [1.0], NEG)
    # hand sums of the visible channel: 0.3, 0.4, 0.4, 0.5
    expected = np.arctan(np.array([[0.5, 0.1], [0.3, 0.9]]) / np.array([[0.3, 0.4], [0.4, 0.5]]))
    scaled = phase_angle(c).values * 2 / math.pi
    assert np.allclose(scaled, expected * 2 / math.pi, rtol=0, atol=1e-12)


def test_brightness_weights():
    u, v = visible([[0.3, 0.3]]), infrared([[0.4, 0.4]])
    weights = brightness_weights(u, v)
    assert weights.as_tuple() == pytest.approx((0.6, 0.8))
    zero = brightness_weights(visible([[0.0]]), infrared([[0.0]]))
    assert zero == ChannelWeights.default()


@pytest.mark.parametrize("tag", list(MethodTag))
def test_every_method_renders_a_unit_image(tag):
    u, v = random_pair(15, low=0.0)
    outcome = run_method(FusionMethod(tag=tag), u, v)
    display = outcome.display
    assert display.values.min() >= 0.0 and display.values.max() <= 1.0
    assert display.tag == ChannelTag.FUSED
    assert outcome.metric_table.values.min() >= 0.0
    inverted = run_method(FusionMethod(tag=tag, invert_output=True), u, v)
    assert np.allclose(inverted.display.values, 1.0 - display.values, rtol=0, atol=1e-15)


def test_phase_methods_ignore_weights():
    u, v = random_pair(16)
    skewed = ChannelWeights(w_a=0.6, w_b=0.8)
    for tag in (MethodTag.T_NEG, MethodTag.PHI_POS):
        plain = run_method(FusionMethod(tag=tag), u, v)
        weighted = run_method(FusionMethod(tag=tag, weights=skewed), u, v)
        assert plain.raw == weighted.raw


def test_method_orderings():
    assert FusionMethod(tag=MethodTag.T_POS).ordering == POS
    assert FusionMethod(tag=MethodTag.COS2PHI_NEG).ordering == NEG
    assert FusionMethod(tag=MethodTag.SIN2PHI).ordering == NEG
    u, v = random_pair(17)
    assert numerator_image(FusionMethod(tag=MethodTag.T_NEG), u, v).to_list() == v.to_list()
    assert numerator_image(FusionMethod(tag=MethodTag.PHI_POS), u, v).to_list() == u.to_list()


def test_fuse_rgb_runs_per_plane():
    planes_u = [random_table(s, tag=ChannelTag.FUSED) for s in (20, 21, 22)]
    planes_v = [random_table(s, tag=ChannelTag.FUSED) for s in (23, 24, 25)]
    outcomes = fuse_rgb(FusionMethod(tag=MethodTag.SIMPLE), planes_u, planes_v)
    assert len(outcomes) == 3
    for outcome, pu, pv in zip(outcomes, planes_u, planes_v):
        assert outcome.raw.to_list() == (pu.values + pv.values).ravel().tolist()
    with pytest.raises(DimensionMismatch):
        fuse_rgb(FusionMethod(tag=MethodTag.SIMPLE), planes_u[:2], planes_v)
