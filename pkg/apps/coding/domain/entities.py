"""
Coding Domain Models.
Modos de partición, parámetros de cuantificación, bloques codificados y flujo de bits.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from shared.domain.entities import frozen_array
from .exceptions import InvalidQP

QP_MIN = 0
QP_MAX = 51
MID_OFFSET = 128.0
BLOCK_PIXELS = 256


class ModeId(Enum):
    """Partición del macrobloque; el valor es el bit de modo en el flujo."""
    T16 = 0
    T4 = 1

    @property
    def unit_size(self) -> int:
        """Lado de la unidad de transformada."""
        return 16 if self is ModeId.T16 else 4

    @property
    def n_units(self) -> int:
        return 1 if self is ModeId.T16 else 16

    @property
    def unit_length(self) -> int:
        return self.unit_size * self.unit_size

    @classmethod
    def parse(cls, value: str) -> 'ModeId':
        return cls[value.upper()]


@dataclass(frozen=True)
class QuantParams:
    """QP y paso del cuantificador: step = 2^((qp-4)/6) - Value Object."""
    qp: int

    def __post_init__(self):
        if isinstance(self.qp, bool) or not isinstance(self.qp, (int, np.integer)):
            raise InvalidQP(self.qp)
        if not QP_MIN <= self.qp <= QP_MAX:
            raise InvalidQP(self.qp)

    @property
    def step(self) -> float:
        return 2.0 ** ((self.qp - 4) / 6.0)


@dataclass(frozen=True, eq=False)
class CodedBlock:
    """Bloque codificado: modo, 256 niveles en orden de barrido y tamaño exacto en bits."""
    mode: ModeId
    qcoeffs: np.ndarray
    bits: int

    @classmethod
    def create(cls, mode: ModeId, qcoeffs, bits: int) -> 'CodedBlock':
        return cls(mode=mode, qcoeffs=frozen_array(qcoeffs, dtype=np.int64), bits=int(bits))


@dataclass(frozen=True)
class BitstreamHeader:
    """Cabecera del contenedor - Value Object."""
    version: int
    orig_width: int
    orig_height: int
    width: int
    height: int
    qp: int
    metric_tag: int
    n_b: int
    payload_bits: int


@dataclass(frozen=True)
class Bitstream:
    """Contenedor completo: cabecera + carga útil entrópica (bits de modo incluidos)."""
    header: BitstreamHeader
    payload: bytes
    data: bytes

    @property
    def total_bits(self) -> int:
        return 8 * len(self.data)

    @property
    def payload_bits(self) -> int:
        return self.header.payload_bits
