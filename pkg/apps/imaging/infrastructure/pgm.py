"""
PGM Image Repository.
Lectura y escritura de PGM binario (P5, maxval 255).
"""

import logging
from pathlib import Path
from typing import List, Tuple

import numpy as np

from apps.imaging.domain.entities import BLOCK_SIZE, MAX_SAMPLE, ImagePlane
from apps.imaging.domain.exceptions import InvalidImageFormat
from apps.imaging.domain.interfaces import ImageRepositoryInterface
from shared.domain.entities import frozen_array
from shared.domain.exceptions import NotFoundException

logger = logging.getLogger(__name__)

PGM_MAGIC = b'P5'
_WHITESPACE = b' \t\r\n\x0b\x0c'


def parse_pgm(data: bytes, source: str = '<memory>') -> np.ndarray:
    """Decodificar bytes PGM P5 en una matriz uint8 (alto x ancho)."""
    if not data.startswith(PGM_MAGIC):
        raise InvalidImageFormat(source, "número mágico distinto de P5")

    tokens: List[int] = []
    pos = len(PGM_MAGIC)
    while len(tokens) < 3:
        if pos >= len(data):
            raise InvalidImageFormat(source, "cabecera truncada")
        byte = data[pos:pos + 1]
        if byte in _WHITESPACE:
            pos += 1
        elif byte == b'#':
            # Comentario hasta fin de línea
            end = data.find(b'\n', pos)
            if end < 0:
                raise InvalidImageFormat(source, "comentario sin fin de línea")
            pos = end + 1
        else:
            start = pos
            while pos < len(data) and data[pos:pos + 1] not in _WHITESPACE:
                pos += 1
            token = data[start:pos]
            if not token.isdigit():
                raise InvalidImageFormat(source, f"campo de cabecera inválido: {token!r}")
            tokens.append(int(token))

    width, height, maxval = tokens
    if width <= 0 or height <= 0:
        raise InvalidImageFormat(source, f"dimensiones inválidas {width}x{height}")
    if maxval != MAX_SAMPLE:
        raise InvalidImageFormat(source, f"maxval {maxval} no soportado (solo 255)")
    if pos >= len(data) or data[pos:pos + 1] not in _WHITESPACE:
        raise InvalidImageFormat(source, "falta el separador tras maxval")
    pos += 1

    raster = data[pos:pos + width * height]
    if len(raster) != width * height:
        raise InvalidImageFormat(
            source, f"datos truncados: {len(raster)} de {width * height} bytes"
        )
    return np.frombuffer(raster, dtype=np.uint8).reshape(height, width).copy()


def encode_pgm(pixels: np.ndarray) -> bytes:
    """Codificar una matriz uint8 como PGM P5."""
    pixels = np.asarray(pixels)
    if pixels.ndim != 2:
        raise ValueError("se esperaba una matriz bidimensional")
    height, width = pixels.shape
    header = b'P5\n%d %d\n%d\n' % (width, height, MAX_SAMPLE)
    return header + np.ascontiguousarray(pixels, dtype=np.uint8).tobytes()


def padded_shape(height: int, width: int) -> Tuple[int, int]:
    """Dimensiones redondeadas al múltiplo de 16 superior."""
    def up(n):
        return -(-n // BLOCK_SIZE) * BLOCK_SIZE
    return up(height), up(width)


def pad_to_macroblocks(pixels: np.ndarray) -> ImagePlane:
    """Rellenar por replicación de bordes hasta múltiplos de 16."""
    height, width = pixels.shape
    target_h, target_w = padded_shape(height, width)
    padded = np.pad(pixels, ((0, target_h - height), (0, target_w - width)), mode='edge')
    return ImagePlane(
        width=target_w,
        height=target_h,
        stride=target_w,
        samples=frozen_array(padded.reshape(-1), dtype=np.uint8),
        orig_width=width,
        orig_height=height,
    )


class PGMImageRepository(ImageRepositoryInterface):
    """Repositorio de planos sobre ficheros PGM."""

    def load(self, path: Path) -> ImagePlane:
        """Cargar un PGM y rellenarlo a múltiplos de 16."""
        path = Path(path)
        try:
            data = path.read_bytes()
        except FileNotFoundError:
            raise NotFoundException('Imagen', str(path))
        except OSError as exc:
            raise InvalidImageFormat(str(path), f"no se pudo leer: {exc}")

        plane = pad_to_macroblocks(parse_pgm(data, str(path)))
        logger.info(
            f"Imagen cargada: {path} ({plane.orig_width}x{plane.orig_height} "
            f"-> {plane.width}x{plane.height})"
        )
        return plane

    def save(self, path: Path, pixels: np.ndarray) -> None:
        """Guardar una matriz uint8 como PGM."""
        Path(path).write_bytes(encode_pgm(pixels))
        logger.debug(f"PGM escrito: {path}")


def load_image(path) -> ImagePlane:
    """Atajo: cargar un PGM rellenado con el repositorio por defecto."""
    return PGMImageRepository().load(path)


def save_image(path, pixels: np.ndarray) -> None:
    """Atajo: escribir un PGM con el repositorio por defecto."""
    PGMImageRepository().save(path, pixels)
