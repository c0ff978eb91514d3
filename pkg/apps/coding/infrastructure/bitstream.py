"""
Bitstream Container.
Empaquetado del contenedor FPRC: cabecera big-endian seguida de la carga útil MSB primero.
Ver docs/BITSTREAM.md para la tabla de campos.
"""

import logging
import struct
from pathlib import Path

from apps.coding.domain.entities import Bitstream, BitstreamHeader
from apps.coding.domain.exceptions import ContainerLimitExceeded, MalformedBitstream, UnsupportedBitstream
from apps.coding.domain.interfaces import BitstreamRepositoryInterface
from shared.domain.exceptions import NotFoundException

logger = logging.getLogger(__name__)

BITSTREAM_MAGIC = b'FPRC'
BITSTREAM_VERSION = 1

# magic, version, orig_w, orig_h, w, h, qp, metric, n_b, payload_bits
_HEADER = struct.Struct('>4sBHHHHBBII')
HEADER_BYTES = _HEADER.size

UINT8_MAX = 0xFF
UINT16_MAX = 0xFFFF
UINT32_MAX = 0xFFFFFFFF

_HEADER_LIMITS = (
    ('version', UINT8_MAX),
    ('orig_width', UINT16_MAX),
    ('orig_height', UINT16_MAX),
    ('width', UINT16_MAX),
    ('height', UINT16_MAX),
    ('qp', UINT8_MAX),
    ('metric_tag', UINT8_MAX),
    ('n_b', UINT32_MAX),
    ('payload_bits', UINT32_MAX),
)


def check_header_limits(header: BitstreamHeader) -> None:
    """Cada campo debe caber en su ancho fijo de la cabecera."""
    for name, limit in _HEADER_LIMITS:
        value = getattr(header, name)
        if not 0 <= value <= limit:
            raise ContainerLimitExceeded(name, value, limit)


def pack_bitstream(header: BitstreamHeader, payload: bytes) -> Bitstream:
    """Serializar cabecera + carga útil."""
    expected = (header.payload_bits + 7) // 8
    if len(payload) != expected:
        raise MalformedBitstream(f"carga útil de {len(payload)} bytes, se esperaban {expected}")
    check_header_limits(header)
    data = _HEADER.pack(
        BITSTREAM_MAGIC,
        header.version,
        header.orig_width,
        header.orig_height,
        header.width,
        header.height,
        header.qp,
        header.metric_tag,
        header.n_b,
        header.payload_bits,
    ) + payload
    return Bitstream(header=header, payload=payload, data=data)


def unpack_bitstream(data: bytes, resource: str = 'bitstream') -> Bitstream:
    """Validar y separar cabecera y carga útil."""
    if len(data) < HEADER_BYTES:
        raise MalformedBitstream(f"solo {len(data)} bytes, la cabecera ocupa {HEADER_BYTES}", resource)
    fields = _HEADER.unpack_from(data)
    magic, version = fields[0], fields[1]
    if magic != BITSTREAM_MAGIC:
        raise UnsupportedBitstream(f"número mágico {magic!r} inválido", resource)
    if version != BITSTREAM_VERSION:
        raise UnsupportedBitstream(f"versión {version} no soportada", resource)

    header = BitstreamHeader(*fields[1:])
    if header.width % 16 or header.height % 16 or header.width == 0 or header.height == 0:
        raise MalformedBitstream(f"dimensiones rellenadas {header.width}x{header.height} inválidas", resource)
    if not (0 < header.orig_width <= header.width and 0 < header.orig_height <= header.height):
        raise MalformedBitstream("dimensiones originales incompatibles", resource)
    if header.n_b != (header.width // 16) * (header.height // 16):
        raise MalformedBitstream(f"n_b={header.n_b} no encaja con la rejilla", resource)
    if header.qp > 51:
        raise MalformedBitstream(f"QP {header.qp} fuera de rango", resource)

    payload = data[HEADER_BYTES:]
    if len(payload) != (header.payload_bits + 7) // 8:
        raise MalformedBitstream(
            f"carga útil de {len(payload)} bytes para {header.payload_bits} bits", resource
        )
    return Bitstream(header=header, payload=payload, data=bytes(data))


class FileBitstreamRepository(BitstreamRepositoryInterface):
    """Repositorio de flujos de bits en disco."""

    def save(self, path: Path, bitstream: Bitstream) -> None:
        Path(path).write_bytes(bitstream.data)
        logger.info(f"Flujo escrito: {path} ({len(bitstream.data)} bytes)")

    def load(self, path: Path) -> bytes:
        path = Path(path)
        try:
            return path.read_bytes()
        except FileNotFoundError:
            raise NotFoundException('Flujo de bits', str(path))
