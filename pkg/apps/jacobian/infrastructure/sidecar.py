"""
Jacobian Sidecar Repository.
Volcado little-endian de las matrices Bpix/Btr para comparar implementaciones.
Ver docs/SIDECAR_FORMAT.md para la tabla de bytes.
"""

import logging
import struct
from pathlib import Path

import numpy as np

from apps.coding.domain.entities import ModeId
from apps.imaging.domain.entities import BlockGrid
from apps.imaging.domain.exceptions import InvalidPlaneGeometry
from apps.jacobian.domain.entities import SketchedJacobian
from apps.jacobian.domain.exceptions import SidecarFormatError
from apps.jacobian.domain.interfaces import SidecarRepositoryInterface
from shared.domain.exceptions import NotFoundException

logger = logging.getLogger(__name__)

SIDECAR_MAGIC = b'SJAC'
SIDECAR_VERSION = 1

# magic, version, ell, width, height, n_b, tau
_HEADER = struct.Struct('<4sHHHHId')
_FLOAT = np.dtype('<f8')


def serialize_jacobian(sj: SketchedJacobian) -> bytes:
    """Cabecera, normas de Frobenius, Bpix y Btr (T16 y luego T4)."""
    header = _HEADER.pack(
        SIDECAR_MAGIC,
        SIDECAR_VERSION,
        sj.ell,
        sj.grid.width,
        sj.grid.height,
        sj.n_b,
        sj.tau,
    )
    arrays = [sj.frob_sq, sj.bpix] + [sj.btr[mode] for mode in ModeId]
    return header + b''.join(np.ascontiguousarray(a, dtype=_FLOAT).tobytes() for a in arrays)


def deserialize_jacobian(data: bytes, source: str = '<memory>') -> SketchedJacobian:
    if len(data) < _HEADER.size:
        raise SidecarFormatError(source, "cabecera truncada")
    magic, version, ell, width, height, n_b, tau = _HEADER.unpack_from(data)
    if magic != SIDECAR_MAGIC:
        raise SidecarFormatError(source, f"número mágico {magic!r} inválido")
    if version != SIDECAR_VERSION:
        raise SidecarFormatError(source, f"versión {version} no soportada")
    try:
        grid = BlockGrid(width=width, height=height)
    except InvalidPlaneGeometry as exc:
        raise SidecarFormatError(source, str(exc))
    if grid.n_b != n_b or ell == 0:
        raise SidecarFormatError(source, f"n_b={n_b}, ell={ell} incompatibles con {width}x{height}")

    stack = n_b * ell * 256
    expected = _HEADER.size + _FLOAT.itemsize * (n_b + 3 * stack)
    if len(data) != expected:
        raise SidecarFormatError(source, f"{len(data)} bytes, se esperaban {expected}")

    values = np.frombuffer(data, dtype=_FLOAT, offset=_HEADER.size).astype(np.float64)
    frob_sq = values[:n_b]
    matrices = values[n_b:].reshape(3, n_b, ell, 256)
    return SketchedJacobian(
        ell=ell,
        grid=grid,
        bpix=matrices[0],
        btr={ModeId.T16: matrices[1], ModeId.T4: matrices[2]},
        tau=tau,
        frob_sq=frob_sq,
    )


class BinarySidecarRepository(SidecarRepositoryInterface):
    """Volcados SJAC en disco."""

    def save(self, path: Path, sj: SketchedJacobian) -> None:
        data = serialize_jacobian(sj)
        Path(path).write_bytes(data)
        logger.info(f"Sidecar del Jacobiano escrito: {path} ({len(data)} bytes)")

    def load(self, path: Path) -> SketchedJacobian:
        path = Path(path)
        try:
            data = path.read_bytes()
        except FileNotFoundError:
            raise NotFoundException('Sidecar del Jacobiano', str(path))
        return deserialize_jacobian(data, str(path))
