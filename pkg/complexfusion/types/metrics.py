import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from complexfusion.errors import DataError, UsageError
from complexfusion.types.raster import BrightnessTable


@dataclass(frozen=True)
class PixelPair:
    """A pixel p and its neighbour q, both as (x, y) = (column, row)."""

    p: Tuple[int, int]
    q: Tuple[int, int]

    def __post_init__(self):
        object.__setattr__(self, "p", (int(self.p[0]), int(self.p[1])))
        object.__setattr__(self, "q", (int(self.q[0]), int(self.q[1])))
        if self.p == self.q:
            raise DataError(f"Pixel pair needs two distinct pixels, got {self.p} twice")

    def swapped(self) -> "PixelPair":
        return PixelPair(self.q, self.p)

    def to_list(self) -> List[int]:
        return [self.p[0], self.p[1], self.q[0], self.q[1]]

    @staticmethod
    def parse(text: str) -> "PixelPair":
        """Parse "x1,y1,x2,y2"."""
        try:
            x1, y1, x2, y2 = (int(part) for part in text.split(","))
        except ValueError:
            raise UsageError(f"Pixel pair must look like x1,y1,x2,y2, got {text!r}")
        return PixelPair((x1, y1), (x2, y2))


class LineAxis(str, Enum):
    COLUMN = "col"
    ROW = "row"


@dataclass(frozen=True)
class ProfileLine:
    axis: LineAxis
    index: int

    def __str__(self) -> str:
        return f"{self.axis.value}:{self.index}"

    @staticmethod
    def parse(text: str) -> "ProfileLine":
        """Parse "col:N" or "row:N"."""
        axis, _, index = text.partition(":")
        try:
            return ProfileLine(LineAxis(axis), int(index))
        except ValueError:
            raise UsageError(f"Profile line must look like col:N or row:N, got {text!r}")


@dataclass(frozen=True)
class ContrastMap:
    """Signed per-pixel contrast against a fixed neighbour offset."""

    table: BrightnessTable
    offset: Tuple[int, int]
    boundary_pixels: int


class ContrastReport(BaseModel):
    model_config = ConfigDict(allow_inf_nan=False)

    k_a: float = Field(..., ge=-2, le=2, description="Visible-channel local contrast")
    k_b: float = Field(..., ge=-2, le=2, description="Infrared local contrast")
    k_t_exact: Optional[float] = Field(None, description="Exact t_neg contrast prediction")
    k_t_approx: Optional[float] = Field(None, description="First-order t_neg contrast prediction")
    k_s: Optional[float] = Field(None, ge=-2, le=2, description="Simple-fusion contrast prediction")
    omega_u: Optional[float] = Field(None, ge=0, le=1)
    omega_v: Optional[float] = Field(None, ge=0, le=1)
    k_fused: Optional[float] = Field(None, ge=-2, le=2, description="Measured contrast of the output")
    pair: Optional[List[int]] = None

    @model_validator(mode="after")
    def check_omegas(self) -> "ContrastReport":
        if self.omega_u is not None and self.omega_v is not None:
            if abs(self.omega_u + self.omega_v - 1.0) > 1e-12:
                raise ValueError("omega_u + omega_v must equal 1")
        return self

    def deserialize(self) -> dict:
        return self.model_dump()


class QualityReport(BaseModel):
    model_config = ConfigDict(allow_inf_nan=False)

    histogram: List[int]
    bin_count: int = Field(..., ge=1)
    entropy_bits: float = Field(..., ge=0)
    occupied_bins: int = Field(..., ge=0)
    min: float
    max: float
    mean: float

    @model_validator(mode="after")
    def check_histogram(self) -> "QualityReport":
        if len(self.histogram) != self.bin_count:
            raise ValueError("histogram length must equal bin_count")
        if self.entropy_bits > math.log2(self.bin_count) + 1e-9:
            raise ValueError(
                f"entropy {self.entropy_bits} exceeds log2({self.bin_count}) bits"
            )
        return self

    @property
    def pixel_count(self) -> int:
        return sum(self.histogram)

    def deserialize(self) -> dict:
        return self.model_dump()

    @staticmethod
    def from_dict(obj: Any) -> "QualityReport":
        return QualityReport.model_validate(obj)
