"""
Imaging Domain Module.
Módulo de dominio para planos de luminancia.
"""

from .entities import BLOCK_SIZE, MAX_SAMPLE, BlockGrid, ImagePlane
from .exceptions import (
    BlockIndexOutOfRange,
    DimensionMismatch,
    ImagingException,
    InvalidImageFormat,
    InvalidPlaneGeometry,
)
from .interfaces import ImageRepositoryInterface

__all__ = [
    'BLOCK_SIZE',
    'MAX_SAMPLE',
    'BlockGrid',
    'ImagePlane',
    'BlockIndexOutOfRange',
    'DimensionMismatch',
    'ImagingException',
    'InvalidImageFormat',
    'InvalidPlaneGeometry',
    'ImageRepositoryInterface',
]
