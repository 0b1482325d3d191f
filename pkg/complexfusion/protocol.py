# The MIT License (MIT)
# Copyright © 2026 complexfusion developers

# Permission is hereby granted, free of charge, to any person obtaining a copy of this software and associated
# documentation files (the “Software”), to deal in the Software without restriction, including without limitation
# the rights to use, copy, modify, merge, publish, distribute, sublicense, and/or sell copies of the Software,
# and to permit persons to whom the Software is furnished to do so, subject to the following conditions:

# The above copyright notice and this permission notice shall be included in all copies or substantial portions of
# the Software.

# THE SOFTWARE IS PROVIDED “AS IS”, WITHOUT WARRANTY OF ANY KIND, EXPRESS OR IMPLIED, INCLUDING BUT NOT LIMITED TO
# THE WARRANTIES OF MERCHANTABILITY, FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL
# THE AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER LIABILITY, WHETHER IN AN ACTION
# OF CONTRACT, TORT OR OTHERWISE, ARISING FROM, OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER
# DEALINGS IN THE SOFTWARE.

import typing

from pydantic import BaseModel, ConfigDict, Field

import complexfusion
from complexfusion.errors import ComplexFusionError
from complexfusion.fusion.methods import FusionMethod
from complexfusion.types.metrics import ContrastReport, QualityReport

# Every command prints one of these documents per line on standard output.
# The layout is described in docs/report_schema.md.


class Document(BaseModel):
    model_config = ConfigDict(allow_inf_nan=False)

    def deserialize(self) -> typing.Dict[str, typing.Any]:
        return self.model_dump(mode="json")


class MethodDescriptor(Document):
    tag: str
    ordering: str
    epsilon: typing.Optional[float] = Field(None, ge=0)
    weights: typing.Optional[typing.List[float]] = None
    invert_output: bool = False

    @staticmethod
    def from_method(method: FusionMethod) -> "MethodDescriptor":
        return MethodDescriptor(
            tag=method.tag.value,
            ordering=method.ordering.value,
            epsilon=method.epsilon if method.tag.uses_epsilon else None,
            weights=list(method.weights.as_tuple()) if method.tag.uses_weights else None,
            invert_output=method.invert_output,
        )


class ProfileReport(Document):
    """
    Brightness profile along one line. source names the copy that was
    profiled: the loaded input, the raw fused table or its display rendering.
    """

    line: str
    source: typing.Literal["input", "raw", "display"]
    values: typing.List[float]


class ContrastMapSummary(Document):
    offset: typing.List[int]
    boundary_pixels: int = Field(..., ge=0)
    max_abs: float = Field(..., ge=0, le=2)
    mean_abs: float = Field(..., ge=0, le=2)


class RunReport(Document):
    schema_version: int = complexfusion.__schema_version__
    command: str
    method: typing.Optional[MethodDescriptor] = None
    inputs: typing.List[str] = []
    output: typing.Optional[str] = None
    files: typing.List[str] = []
    histogram_csv: typing.Optional[str] = None
    input_quality: typing.List[QualityReport] = []
    output_quality: typing.Optional[QualityReport] = None
    contrast: typing.Optional[ContrastReport] = None
    profile: typing.Optional[ProfileReport] = None
    contrast_maps: typing.List[ContrastMapSummary] = []
    indeterminate_pixels: int = Field(0, ge=0)

    # Filled by the epsilon sweep only.
    max_raw: typing.Optional[float] = None
    numerator_correlation: typing.Optional[float] = Field(None, ge=-1, le=1)
    mean_abs_diff_previous: typing.Optional[float] = Field(None, ge=0)

    wall_time_s: float = Field(0.0, ge=0)


class CompareRow(Document):
    method: MethodDescriptor
    output: typing.Optional[str] = None
    entropy_bits: float = Field(..., ge=0)
    occupied_bins: int = Field(..., ge=0)
    contrast: typing.Optional[float] = Field(None, ge=-2, le=2)


class CompareReport(Document):
    schema_version: int = complexfusion.__schema_version__
    command: str = "compare"
    inputs: typing.List[str]
    bins: int = Field(..., ge=2)
    pair: typing.Optional[typing.List[int]] = None
    input_quality: typing.List[QualityReport] = []
    rows: typing.List[CompareRow] = []
    table_csv: typing.Optional[str] = None
    wall_time_s: float = Field(0.0, ge=0)


class ErrorBody(BaseModel):
    category: str
    message: str


class ErrorReport(Document):
    error: ErrorBody

    @staticmethod
    def from_exception(e: BaseException) -> "ErrorReport":
        if isinstance(e, ComplexFusionError):
            return ErrorReport(error=ErrorBody(category=e.category, message=str(e)))
        return ErrorReport(
            error=ErrorBody(category="InternalError", message=f"{type(e).__name__}: {e}")
        )
