from .raster import BrightnessTable, ChannelTag
from .fusion import ChannelWeights, ComplexImage, Epsilon, Ordering
from .metrics import ContrastMap, ContrastReport, PixelPair, ProfileLine, QualityReport
