"""
Sketching Domain Module.
"""

from .entities import DCT_TOP_K, GENERATOR_NAME, SketchKind, SketchMatrix, SketchSpec
from .exceptions import ChannelLayoutError, InvalidSketchSpec, SketchException, SketchLengthMismatch

__all__ = [
    'DCT_TOP_K',
    'GENERATOR_NAME',
    'SketchKind',
    'SketchMatrix',
    'SketchSpec',
    'ChannelLayoutError',
    'InvalidSketchSpec',
    'SketchException',
    'SketchLengthMismatch',
]
