"""
Exception hierarchy shared by every module.

Each error class carries a machine-readable ``category`` and the process
``exit_code`` the command line front end uses when the error escapes a command.
"""


class ComplexFusionError(Exception):
    category: str = "InternalError"
    exit_code: int = 3


class UsageError(ComplexFusionError):
    category = "UsageError"
    exit_code = 1


class LoadError(ComplexFusionError):
    category = "LoadError"
    exit_code = 2


class ImageNotFound(LoadError, FileNotFoundError):
    pass


class MalformedImage(LoadError):
    pass


class UnsupportedBitDepth(LoadError):
    pass


class IoFailure(ComplexFusionError):
    category = "IoFailure"
    exit_code = 2


class DataError(ComplexFusionError, ValueError):
    category = "DataError"
    exit_code = 2


class RangeViolation(DataError):
    pass


class NegativeValue(DataError):
    pass


class DimensionMismatch(DataError):
    category = "DimensionMismatch"


class ChannelTagMismatch(DataError):
    pass


class EmptySequence(DataError):
    pass


class WeightLengthMismatch(DataError):
    pass


class DivisionByZero(DataError, ZeroDivisionError):
    pass


class OutOfBounds(DataError, IndexError):
    pass


class InvalidOffset(DataError):
    pass


class DegenerateDenominator(DataError):
    pass


class ZeroBrightnessPair(DataError):
    pass


class GeometryViolation(DataError):
    pass


class MethodError(ComplexFusionError, ValueError):
    category = "MethodError"
    exit_code = 2


class InvalidEpsilon(MethodError):
    pass
