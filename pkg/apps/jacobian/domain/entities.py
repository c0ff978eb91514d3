"""
Jacobian Domain Models.
Jacobiano proyectado S·J_f(x) cortado por bloques, en dominio de píxel y transformado.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Optional

import numpy as np

from apps.coding.domain.entities import ModeId
from apps.imaging.domain.entities import BlockGrid
from apps.sketching.domain.entities import SketchMatrix


class TauPolicy(Enum):
    """Cómo se resume la norma de Frobenius por bloque en τ.

    ENERGY usa la energía media por píxel, en la misma escala que ‖Bpix·e‖²/‖e‖²;
    MEAN y RMS resumen la norma sin normalizar.
    """
    ENERGY = 'energy'
    MEAN = 'mean'
    RMS = 'rms'


@dataclass(frozen=True, eq=False)
class SketchedJacobian:
    """Matrices ℓ x 256 por bloque; inmutable durante la RDO.

    bpix tiene forma (n_b, ℓ, 256) y btr guarda una pila igual por cada modo.
    full es la matriz completa ℓ x n_p cuando se ha calculado en este proceso.
    """
    ell: int
    grid: BlockGrid
    bpix: np.ndarray
    btr: Dict[ModeId, np.ndarray]
    tau: float
    frob_sq: np.ndarray
    sketch: Optional[SketchMatrix] = None
    full: Optional[np.ndarray] = None

    @property
    def n_b(self) -> int:
        return self.bpix.shape[0]

    def block(self, i: int, mode: Optional[ModeId] = None) -> np.ndarray:
        """Bpix del bloque i, o Btr si se indica el modo."""
        self.grid.check_index(i)
        if mode is None:
            return self.bpix[i]
        return self.btr[mode][i]

    def with_tau(self, tau: float) -> 'SketchedJacobian':
        """Copia con otro τ; las matrices se comparten."""
        return SketchedJacobian(
            ell=self.ell,
            grid=self.grid,
            bpix=self.bpix,
            btr=self.btr,
            tau=float(tau),
            frob_sq=self.frob_sq,
            sketch=self.sketch,
            full=self.full,
        )


@dataclass(frozen=True)
class LocalizationReport:
    """IDSE global frente a la suma localizada por bloques."""
    global_idse: float
    localized_idse: float

    @property
    def relative_gap(self) -> float:
        if self.global_idse == 0:
            return 0.0 if self.localized_idse == 0 else float('inf')
        return abs(self.localized_idse - self.global_idse) / self.global_idse
