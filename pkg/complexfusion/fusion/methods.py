import typing as ty
from dataclasses import dataclass
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field

from complexfusion.fusion.additive import simple_fuse, weighted_fuse
from complexfusion.fusion.complex import amplitude, cos2phi_image, make_complex, sin2phi_image
from complexfusion.fusion.phase import count_indeterminate, phi_image, ratio_terms, tangent_image
from complexfusion.raster.ops import fit_to_unit, invert, minmax_display, normalize
from complexfusion.types.fusion import ChannelWeights, Epsilon, Ordering
from complexfusion.types.raster import BrightnessTable, ChannelTag

DEFAULT_EPSILON = 0.01


class MethodTag(str, Enum):
    SIMPLE = "Simple"
    WEIGHTED = "Weighted"
    AMPLITUDE = "Amplitude"
    T_NEG = "TNeg"
    T_POS = "TPos"
    PHI_NEG = "PhiNeg"
    PHI_POS = "PhiPos"
    SIN2PHI = "Sin2Phi"
    COS2PHI_NEG = "Cos2PhiNeg"
    COS2PHI_POS = "Cos2PhiPos"

    @property
    def uses_epsilon(self) -> bool:
        return self in PHASE_METHODS

    @property
    def uses_weights(self) -> bool:
        return self not in PHASE_METHODS and self != MethodTag.SIMPLE


PHASE_METHODS = {MethodTag.T_NEG, MethodTag.T_POS, MethodTag.PHI_NEG, MethodTag.PHI_POS}
SWEEP_METHODS = PHASE_METHODS


class FusionMethod(BaseModel):
    """One entry of the fusion menu together with its parameters."""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    tag: MethodTag
    epsilon: float = Field(DEFAULT_EPSILON, ge=0, description="Denominator offset for T*/Phi*")
    weights: ChannelWeights = Field(default_factory=ChannelWeights.default)
    invert_output: bool = False

    @property
    def name(self) -> str:
        return self.tag.value

    @property
    def ordering(self) -> Ordering:
        return Ordering.POS if self.tag.value.endswith("Pos") else Ordering.NEG

    def with_epsilon(self, epsilon: float) -> "FusionMethod":
        return self.model_copy(update={"epsilon": float(epsilon)})


@dataclass(frozen=True)
class FusionOutcome:
    """
    raw keeps the unnormalized values metrics run on; display is the [0, 1]
    rendering that gets saved.
    """

    method: FusionMethod
    raw: BrightnessTable
    display: BrightnessTable
    indeterminate_pixels: int = 0

    @property
    def metric_table(self) -> BrightnessTable:
        """raw, unless it is signed (cos2phi); contrast needs non-negative values."""
        if float(self.raw.values.min()) < 0.0:
            return self.display
        return self.raw


def _simple(u, v, method):
    raw = simple_fuse(u, v)
    return raw, fit_to_unit(raw)


def _weighted(u, v, method):
    raw = weighted_fuse(u, v, method.weights)
    return raw, fit_to_unit(raw)


def _amplitude(u, v, method):
    raw = amplitude(make_complex(u, v, Ordering.NEG, method.weights))
    return raw, fit_to_unit(raw)


def _tangent(u, v, method):
    raw = tangent_image(u, v, method.ordering, Epsilon(value=method.epsilon))
    return raw, normalize(raw)


def _phi(u, v, method):
    raw = phi_image(u, v, method.ordering, Epsilon(value=method.epsilon))
    return raw, raw


def _sin2phi(u, v, method):
    raw = sin2phi_image(make_complex(u, v, Ordering.NEG, method.weights))
    return raw, normalize(raw)


def _cos2phi(u, v, method):
    raw = cos2phi_image(make_complex(u, v, method.ordering, method.weights))
    return raw, minmax_display(raw)


FUSION_METHODS: ty.Dict[MethodTag, ty.Callable] = {
    MethodTag.SIMPLE: _simple,
    MethodTag.WEIGHTED: _weighted,
    MethodTag.AMPLITUDE: _amplitude,
    MethodTag.T_NEG: _tangent,
    MethodTag.T_POS: _tangent,
    MethodTag.PHI_NEG: _phi,
    MethodTag.PHI_POS: _phi,
    MethodTag.SIN2PHI: _sin2phi,
    MethodTag.COS2PHI_NEG: _cos2phi,
    MethodTag.COS2PHI_POS: _cos2phi,
}


def run_method(method: FusionMethod, u: BrightnessTable, v: BrightnessTable) -> FusionOutcome:
    raw, display = FUSION_METHODS[method.tag](u, v, method)
    indeterminate = 0
    if method.tag in (MethodTag.PHI_NEG, MethodTag.PHI_POS):
        indeterminate = count_indeterminate(u, v, method.ordering, method.epsilon)
    if method.invert_output:
        display = invert(display)
    return FusionOutcome(
        method=method,
        raw=raw,
        display=display.with_tag(ChannelTag.FUSED),
        indeterminate_pixels=indeterminate,
    )


def numerator_image(method: FusionMethod, u: BrightnessTable, v: BrightnessTable) -> BrightnessTable:
    """The table a phase method divides: v for the Neg ordering, u for Pos."""
    numerator, _ = ratio_terms(u, v, method.ordering)
    return BrightnessTable(numerator, tag=ChannelTag.FUSED)
