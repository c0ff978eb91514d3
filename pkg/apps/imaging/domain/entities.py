"""
Imaging Domain Models.
Entidades de dominio para planos de luminancia y rejillas de macrobloques.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from shared.domain.entities import frozen_array
from .exceptions import BlockIndexOutOfRange, InvalidPlaneGeometry


BLOCK_SIZE = 16
MAX_SAMPLE = 255


@dataclass(frozen=True, eq=False)
class ImagePlane:
    """Plano de luminancia de 8 bits, ya rellenado a múltiplos de 16 - Value Object."""
    width: int
    height: int
    stride: int
    samples: np.ndarray
    orig_width: int
    orig_height: int

    def __post_init__(self):
        """Validaciones post-inicialización."""
        if self.width % BLOCK_SIZE or self.height % BLOCK_SIZE:
            raise InvalidPlaneGeometry(
                f"dimensiones {self.width}x{self.height} no son múltiplos de {BLOCK_SIZE}"
            )
        if self.stride < self.width:
            raise InvalidPlaneGeometry(f"stride {self.stride} menor que el ancho {self.width}")
        if self.samples.dtype != np.uint8 or self.samples.ndim != 1:
            raise InvalidPlaneGeometry("las muestras deben ser un vector uint8")
        if self.samples.size != self.stride * self.height:
            raise InvalidPlaneGeometry(
                f"se esperaban {self.stride * self.height} muestras, hay {self.samples.size}"
            )
        for padded, orig in ((self.width, self.orig_width), (self.height, self.orig_height)):
            if not (0 < orig <= padded < orig + BLOCK_SIZE):
                raise InvalidPlaneGeometry(
                    f"dimensión original {orig} incompatible con la rellenada {padded}"
                )

    @classmethod
    def from_array(cls, pixels: np.ndarray, orig_width: int = None, orig_height: int = None) -> 'ImagePlane':
        """Construir un plano a partir de una matriz (alto x ancho) ya rellenada."""
        pixels = np.asarray(pixels)
        height, width = pixels.shape
        return cls(
            width=width,
            height=height,
            stride=width,
            samples=frozen_array(pixels.reshape(-1), dtype=np.uint8),
            orig_width=orig_width or width,
            orig_height=orig_height or height,
        )

    @property
    def pixels(self) -> np.ndarray:
        """Vista (alto x ancho) de las muestras rellenadas."""
        return self.samples.reshape(self.height, self.stride)[:, :self.width]

    @property
    def visible_pixels(self) -> np.ndarray:
        """Vista de la región original, sin relleno."""
        return self.pixels[:self.orig_height, :self.orig_width]

    @property
    def n_pixels(self) -> int:
        return self.width * self.height

    def grid(self) -> 'BlockGrid':
        """Rejilla de macrobloques del plano."""
        return BlockGrid(width=self.width, height=self.height)


@dataclass(frozen=True)
class BlockGrid:
    """Partición en macrobloques de 16x16 - Value Object."""
    width: int
    height: int
    block_size: int = BLOCK_SIZE

    def __post_init__(self):
        if self.width % self.block_size or self.height % self.block_size:
            raise InvalidPlaneGeometry(
                f"la rejilla {self.width}x{self.height} no encaja con bloques de {self.block_size}"
            )

    @property
    def cols(self) -> int:
        return self.width // self.block_size

    @property
    def rows(self) -> int:
        return self.height // self.block_size

    @property
    def n_b(self) -> int:
        """Número de macrobloques."""
        return self.cols * self.rows

    def block_origin(self, i: int) -> Tuple[int, int]:
        """Coordenada (fila, columna) del píxel superior izquierdo del bloque i."""
        self.check_index(i)
        row, col = divmod(i, self.cols)
        return row * self.block_size, col * self.block_size

    def check_index(self, i: int) -> None:
        if not 0 <= i < self.n_b:
            raise BlockIndexOutOfRange(i, self.n_b)

    def to_blocks(self, array: np.ndarray) -> np.ndarray:
        """Reordenar (..., alto, ancho) en (..., n_b, 256) por bloques, orden fila-mayor."""
        lead = array.shape[:-2]
        b = self.block_size
        tiled = array.reshape(*lead, self.rows, b, self.cols, b)
        tiled = np.moveaxis(tiled, -3, -2)
        return tiled.reshape(*lead, self.n_b, b * b)

    def from_blocks(self, blocks: np.ndarray) -> np.ndarray:
        """Inversa de to_blocks: (..., n_b, 256) a (..., alto, ancho)."""
        lead = blocks.shape[:-2]
        b = self.block_size
        tiled = blocks.reshape(*lead, self.rows, self.cols, b, b)
        tiled = np.moveaxis(tiled, -2, -3)
        return tiled.reshape(*lead, self.height, self.width)
