"""
Evaluation Domain Models.
Puntos y curvas tasa-distorsión, estimaciones de FLOPs e informes de experimentos.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Tuple

import numpy as np

MIN_BD_POINTS = 4
REFERENCE_CORRELATION = 0.997
# h, w, hr, wr, nr, ell del escenario publicado y su cociente redondeado
REFERENCE_FLOP_SETTING = (768, 768, 224, 224, 2, 2)
REFERENCE_FLOP_RATIO = 7.06


class QualityAxis(Enum):
    """Eje de calidad de una curva; las distorsiones se niegan para que mayor sea mejor."""
    PSNR = 'psnr'
    NEG_IDSE = 'neg-idse'
    NEG_FEATDIST = 'neg-featdist'


@dataclass(frozen=True)
class RDPoint:
    """Un punto del barrido."""
    qp: int
    bits: int
    bpp: float
    psnr: float
    idse: float = math.nan
    feature_distance: float = math.nan
    encode_flops: int = 0

    def quality(self, axis: QualityAxis) -> float:
        if axis is QualityAxis.PSNR:
            return self.psnr
        if axis is QualityAxis.NEG_IDSE:
            return -self.idse
        return -self.feature_distance


@dataclass(frozen=True)
class RDCurve:
    """Puntos ordenados por QP de una configuración, con metadatos de reproducibilidad."""
    label: str
    points: Tuple[RDPoint, ...]
    metadata: Dict[str, str] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.points)

    @property
    def qps(self) -> List[int]:
        return [p.qp for p in self.points]

    def rates(self) -> np.ndarray:
        return np.array([p.bits for p in self.points], dtype=np.float64)

    def qualities(self, axis: QualityAxis) -> np.ndarray:
        return np.array([p.quality(axis) for p in self.points], dtype=np.float64)


@dataclass(frozen=True)
class FlopEstimate:
    """Coste analítico de la métrica FD frente a la IDSE."""
    fd_flops: float
    idse_flops: float

    @property
    def ratio(self) -> float:
        return self.fd_flops / self.idse_flops


@dataclass(frozen=True)
class CorrelationReport:
    """Distancia de región completa frente a suma de distancias por bloque."""
    r: float
    region_distances: np.ndarray = field(compare=False)
    block_sums: np.ndarray = field(compare=False)

    @property
    def samples(self) -> int:
        return int(self.region_distances.size)

    def describe(self) -> str:
        """r medido junto al valor de referencia de la agregación por bloques."""
        return f"r={self.r:.4f} referencia={REFERENCE_CORRELATION} muestras={self.samples}"


@dataclass(frozen=True)
class MonotonicityReport:
    """Distancia de características por bloque a lo largo de un barrido de QP."""
    qps: Tuple[int, ...]
    distances: np.ndarray = field(compare=False)

    @property
    def non_monotone_blocks(self) -> List[int]:
        """Bloques cuya distancia baja en algún paso de QP creciente."""
        steps = np.diff(self.distances, axis=0)
        return [int(i) for i in np.flatnonzero(np.any(steps < 0, axis=0))]
