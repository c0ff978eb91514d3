"""
Block Transforms.
DCT-II ortonormal separable por macrobloque: una 16x16 (T16) o dieciséis 4x4 (T4),
y órdenes de barrido zigzag por unidad.
"""

from functools import lru_cache

import numpy as np
from scipy.fft import dctn, idctn

from .entities import BLOCK_PIXELS, ModeId


def _as_tiles(blocks: np.ndarray) -> np.ndarray:
    """(..., 256) o (..., 16, 16) a (..., 4, 4, 4, 4) con ejes (fila_tesela, y, col_tesela, x)."""
    lead = blocks.shape[:-2] if blocks.shape[-2:] == (16, 16) else blocks.shape[:-1]
    return blocks.reshape(*lead, 4, 4, 4, 4)


def dct_forward(block: np.ndarray, mode: ModeId) -> np.ndarray:
    """Coeficientes (..., 256) en disposición natural: cada unidad ocupa su propia región."""
    block = np.asarray(block, dtype=np.float64)
    if mode is ModeId.T16:
        lead = block.shape[:-2] if block.shape[-2:] == (16, 16) else block.shape[:-1]
        square = block.reshape(*lead, 16, 16)
        return dctn(square, axes=(-2, -1), norm='ortho').reshape(*lead, BLOCK_PIXELS)
    tiles = _as_tiles(block)
    coeffs = dctn(tiles, axes=(-3, -1), norm='ortho')
    return coeffs.reshape(*tiles.shape[:-4], BLOCK_PIXELS)


def dct_inverse(coeffs: np.ndarray, mode: ModeId) -> np.ndarray:
    """Inversa de dct_forward: (..., 256) coeficientes a (..., 256) píxeles fila-mayor."""
    coeffs = np.asarray(coeffs, dtype=np.float64)
    lead = coeffs.shape[:-1]
    if mode is ModeId.T16:
        square = coeffs.reshape(*lead, 16, 16)
        return idctn(square, axes=(-2, -1), norm='ortho').reshape(*lead, BLOCK_PIXELS)
    tiles = coeffs.reshape(*lead, 4, 4, 4, 4)
    return idctn(tiles, axes=(-3, -1), norm='ortho').reshape(*lead, BLOCK_PIXELS)


def zigzag(n: int) -> np.ndarray:
    """Orden zigzag JPEG de una matriz n x n, como índices fila-mayor."""
    order = []
    for s in range(2 * n - 1):
        rows = range(max(0, s - n + 1), min(s, n - 1) + 1)
        if s % 2 == 0:
            rows = reversed(rows)
        order.extend(row * n + (s - row) for row in rows)
    return np.array(order, dtype=np.int64)


@lru_cache(maxsize=None)
def _scan(mode: ModeId) -> np.ndarray:
    if mode is ModeId.T16:
        order = zigzag(16)
    else:
        local = zigzag(4)
        y, x = np.divmod(local, 4)
        order = np.concatenate([
            (ty * 4 + y) * 16 + tx * 4 + x
            for ty in range(4) for tx in range(4)
        ])
    order.setflags(write=False)
    return order


def scan_order(mode: ModeId) -> np.ndarray:
    """Índice natural de cada posición de barrido; las unidades T4 van en orden de teselas."""
    return _scan(mode)


def to_scan(coeffs: np.ndarray, mode: ModeId) -> np.ndarray:
    return np.asarray(coeffs)[..., scan_order(mode)]


def from_scan(scanned: np.ndarray, mode: ModeId) -> np.ndarray:
    scanned = np.asarray(scanned)
    natural = np.empty_like(scanned)
    natural[..., scan_order(mode)] = scanned
    return natural
