"""
Imaging Application Services.
Extracción de bloques, reensamblado y métricas de calidad en el dominio de píxeles.
"""

import math

import numpy as np

from apps.imaging.domain.entities import MAX_SAMPLE, BlockGrid, ImagePlane
from apps.imaging.domain.exceptions import DimensionMismatch

PSNR_IDENTICAL = math.inf


def extract_block(plane: ImagePlane, i: int) -> np.ndarray:
    """Vector de 256 píxeles (fila-mayor) del bloque i, como reales."""
    grid = plane.grid()
    top, left = grid.block_origin(i)
    size = grid.block_size
    block = plane.pixels[top:top + size, left:left + size]
    return block.astype(np.float64).reshape(-1)


def extract_blocks(plane: ImagePlane) -> np.ndarray:
    """Todos los bloques a la vez: matriz (n_b, 256)."""
    return plane.grid().to_blocks(plane.pixels.astype(np.float64))


def assemble_blocks(blocks: np.ndarray, grid: BlockGrid) -> np.ndarray:
    """Reensamblar (n_b, 256) en la matriz (alto x ancho) del plano."""
    return grid.from_blocks(np.asarray(blocks))


def mse(a: np.ndarray, b: np.ndarray) -> float:
    """Error cuadrático medio en doble precisión."""
    diff = np.asarray(a, dtype=np.float64) - np.asarray(b, dtype=np.float64)
    return float(np.mean(diff * diff))


def psnr_from_mse(value: float) -> float:
    if value == 0:
        return PSNR_IDENTICAL
    return 10.0 * math.log10(MAX_SAMPLE ** 2 / value)


def psnr(a: ImagePlane, b: ImagePlane) -> float:
    """PSNR en dB sobre la región sin relleno; +inf si los planos coinciden."""
    dims_a = (a.orig_width, a.orig_height)
    dims_b = (b.orig_width, b.orig_height)
    if dims_a != dims_b:
        raise DimensionMismatch(dims_a, dims_b)
    return psnr_from_mse(mse(a.visible_pixels, b.visible_pixels))
