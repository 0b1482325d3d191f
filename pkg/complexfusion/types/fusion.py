import math
from enum import Enum
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from complexfusion.errors import DataError, InvalidEpsilon
from complexfusion.types.raster import BrightnessTable, require_same_shape

NORM_TOLERANCE = 1e-12


class Ordering(str, Enum):
    """NEG puts channel A in the real part, POS swaps the channels."""

    NEG = "Neg"
    POS = "Pos"


class ChannelWeights(BaseModel):
    """Cross-channel weights constrained to unit Euclidean norm."""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    w_a: float = Field(..., ge=0, description="Weight of the visible channel A")
    w_b: float = Field(..., ge=0, description="Weight of the infrared channel B")

    @model_validator(mode="after")
    def check_norm(self) -> "ChannelWeights":
        norm = math.hypot(self.w_a, self.w_b)
        if abs(norm - 1.0) > NORM_TOLERANCE:
            raise ValueError(
                f"Channel weights ({self.w_a}, {self.w_b}) have norm {norm}, expected 1"
            )
        return self

    @classmethod
    def default(cls) -> "ChannelWeights":
        half = math.sqrt(0.5)
        return cls(w_a=half, w_b=half)

    @classmethod
    def normalized(cls, w_a: float, w_b: float) -> Tuple["ChannelWeights", bool]:
        """
        Scale an arbitrary non-negative pair onto the unit circle.

        Returns:
            (weights, renormalized): renormalized is True when the input pair
            was not already of unit norm.
        """
        if w_a < 0 or w_b < 0 or not (math.isfinite(w_a) and math.isfinite(w_b)):
            raise DataError(f"Channel weights must be finite and non-negative, got ({w_a}, {w_b})")
        norm = math.hypot(w_a, w_b)
        if norm == 0:
            raise DataError("Channel weights (0, 0) cannot be normalized")
        if abs(norm - 1.0) <= NORM_TOLERANCE:
            return cls(w_a=w_a, w_b=w_b), False
        return cls(w_a=w_a / norm, w_b=w_b / norm), True

    def as_tuple(self) -> Tuple[float, float]:
        return (self.w_a, self.w_b)


class Epsilon(BaseModel):
    """Brightness offset added to a ratio denominator."""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    value: float = Field(0.0, ge=0)

    def require_regularizing(self, operation: str = "A regularized operation"):
        if self.value <= 0:
            raise InvalidEpsilon(f"{operation} needs epsilon > 0")


def as_epsilon(eps: Union[Epsilon, float, int]) -> Epsilon:
    if isinstance(eps, Epsilon):
        return eps
    try:
        return Epsilon(value=float(eps))
    except ValueError as e:
        raise InvalidEpsilon(f"Invalid epsilon {eps!r}: {e}") from e


@dataclass(frozen=True, eq=False)
class ComplexImage:
    re: BrightnessTable
    im: BrightnessTable
    ordering: Ordering

    def __post_init__(self):
        require_same_shape(self.re, self.im)
        if self.re.values.min() < 0 or self.im.values.min() < 0:
            raise DataError("Complex image parts must be non-negative brightness tables")
        object.__setattr__(self, "ordering", Ordering(self.ordering))

    @property
    def shape(self):
        return self.re.shape

    def as_array(self) -> np.ndarray:
        """The pixel grid as a numpy complex array re + i*im."""
        return self.re.values + 1j * self.im.values
