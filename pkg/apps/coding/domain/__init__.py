"""
Coding Domain Module.
Módulo de dominio del códec intra.
"""

from .entities import (
    BLOCK_PIXELS,
    MID_OFFSET,
    QP_MAX,
    QP_MIN,
    Bitstream,
    BitstreamHeader,
    CodedBlock,
    ModeId,
    QuantParams,
)
from .exceptions import (
    CodingException,
    InvalidQP,
    MalformedBitstream,
    QuantizationOverflow,
    UnsupportedBitstream,
)
from .interfaces import BitstreamRepositoryInterface

__all__ = [
    'BLOCK_PIXELS',
    'MID_OFFSET',
    'QP_MAX',
    'QP_MIN',
    'Bitstream',
    'BitstreamHeader',
    'CodedBlock',
    'ModeId',
    'QuantParams',
    'CodingException',
    'InvalidQP',
    'MalformedBitstream',
    'QuantizationOverflow',
    'UnsupportedBitstream',
    'BitstreamRepositoryInterface',
]
