"""
FeatNet Domain Module.
Módulo de dominio del extractor de características.
"""

from .entities import FeatNet, FeatNetSpec, FeatNetWeights, InputNorm, default_spec
from .exceptions import (
    FeatNetException,
    InvalidNetSpec,
    InvalidWeights,
    ShapeMismatch,
    WeightsFormatError,
)
from .interfaces import WeightsRepositoryInterface
from .layers import AvgPool, Conv2D, Dense, Layer, LayerKind, LayerParams, ReLU, Softplus

__all__ = [
    'FeatNet',
    'FeatNetSpec',
    'FeatNetWeights',
    'InputNorm',
    'default_spec',
    'FeatNetException',
    'InvalidNetSpec',
    'InvalidWeights',
    'ShapeMismatch',
    'WeightsFormatError',
    'WeightsRepositoryInterface',
    'AvgPool',
    'Conv2D',
    'Dense',
    'Layer',
    'LayerKind',
    'LayerParams',
    'ReLU',
    'Softplus',
]
