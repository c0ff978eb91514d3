"""
Sketching Domain Models.
Especificación y matriz materializada del sketch S (ℓ x n_f).
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Optional, Tuple

import numpy as np

from .exceptions import InvalidSketchSpec

GENERATOR_NAME = 'numpy.random.Philox'
DCT_TOP_K = 16


class SketchKind(Enum):
    """Familias de sketch soportadas."""
    RADEMACHER = 'rademacher'
    GAUSSIAN = 'gaussian'
    DCT_TOP16 = 'dcttop16'


@dataclass(frozen=True)
class SketchSpec:
    """Parámetros que determinan por completo el sketch - Value Object."""
    kind: SketchKind
    ell: int
    seed: int
    n_f: int
    top_k: int = DCT_TOP_K

    def __post_init__(self):
        if not isinstance(self.kind, SketchKind):
            raise InvalidSketchSpec(f"tipo de sketch desconocido: {self.kind!r}")
        if self.n_f < 1:
            raise InvalidSketchSpec(f"n_f debe ser positivo (recibido {self.n_f})")
        if not 1 <= self.ell <= self.n_f:
            raise InvalidSketchSpec(f"ell={self.ell} fuera de [1, {self.n_f}]")
        if not 0 <= self.seed < 2 ** 64:
            raise InvalidSketchSpec(f"semilla {self.seed} fuera del rango de 64 bits")
        if self.top_k < 1:
            raise InvalidSketchSpec("top_k debe ser positivo")

    def with_n_f(self, n_f: int) -> 'SketchSpec':
        """Misma familia, ℓ y semilla para otra dimensión de características."""
        return SketchSpec(kind=self.kind, ell=self.ell, seed=self.seed, n_f=n_f, top_k=self.top_k)

    def describe(self) -> Dict[str, str]:
        """Metadatos para CSV y sidecar."""
        return {
            'sketch': self.kind.value,
            'ell': str(self.ell),
            'seed': str(self.seed),
            'generator': GENERATOR_NAME,
        }


@dataclass(frozen=True, eq=False)
class SketchMatrix:
    """Sketch materializado; inmutable tras su construcción."""
    matrix: np.ndarray
    spec: SketchSpec
    generator: str = GENERATOR_NAME
    selection: Optional[np.ndarray] = None
    feature_shape: Optional[Tuple[int, int, int]] = None

    @property
    def ell(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_f(self) -> int:
        return self.matrix.shape[1]
