"""
RDO Domain Models.
Configuración de la RDO, costes por candidato y decisiones por bloque.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

from apps.coding.domain.entities import ModeId, QuantParams
from apps.jacobian.domain.entities import TauPolicy
from apps.sketching.domain.entities import SketchSpec
from .exceptions import InvalidRDOConfig


class Metric(Enum):
    """Métrica de distorsión; tag es el byte que se escribe en la cabecera del flujo."""
    SSE = 'sse'
    IDSE = 'idse'
    FD = 'fd'

    @property
    def tag(self) -> int:
        return {Metric.SSE: 0, Metric.IDSE: 1, Metric.FD: 2}[self]


class LambdaNorm(Enum):
    NONE = 'none'
    TRACE = 'trace'


def lambda_from_qp(qp: int, c: float) -> float:
    """λ = c·2^((qp-12)/3)."""
    if not c > 0:
        raise InvalidRDOConfig('c', f"debe ser mayor a 0 (recibido {c})")
    return c * 2.0 ** ((qp - 12) / 3.0)


@dataclass(frozen=True)
class RDOConfig:
    """Parámetros de una codificación con RDO - Value Object."""
    metric: Metric
    qp: int
    c: float = 0.85
    tau_policy: TauPolicy = TauPolicy.ENERGY
    tau: Optional[float] = None
    lambda_norm: LambdaNorm = LambdaNorm.TRACE
    sketch: Optional[SketchSpec] = None
    fd_blend: float = 1.0
    threads: int = 1

    def __post_init__(self):
        QuantParams(self.qp)
        if not self.c > 0:
            raise InvalidRDOConfig('c', f"debe ser mayor a 0 (recibido {self.c})")
        if self.tau is not None and not self.tau >= 0:
            raise InvalidRDOConfig('tau', f"debe ser no negativo (recibido {self.tau})")
        if not self.fd_blend >= 0:
            raise InvalidRDOConfig('fd_blend', f"debe ser no negativo (recibido {self.fd_blend})")
        if self.threads < 1:
            raise InvalidRDOConfig('threads', f"debe ser al menos 1 (recibido {self.threads})")

    @property
    def quant(self) -> QuantParams:
        return QuantParams(self.qp)

    @property
    def lambda_base(self) -> float:
        """λ de la regla exponencial, antes de normalizar."""
        return lambda_from_qp(self.qp, self.c)

    def with_qp(self, qp: int) -> 'RDOConfig':
        return RDOConfig(
            metric=self.metric,
            qp=qp,
            c=self.c,
            tau_policy=self.tau_policy,
            tau=self.tau,
            lambda_norm=self.lambda_norm,
            sketch=self.sketch,
            fd_blend=self.fd_blend,
            threads=self.threads,
        )


@dataclass(frozen=True)
class CandidateCost:
    """Coste de un modo candidato para un bloque."""
    mode: ModeId
    distortion: float
    bits: int
    cost: float


@dataclass(frozen=True)
class BlockDecision:
    """Modo elegido para el bloque i junto con los costes de todos los candidatos."""
    index: int
    mode: ModeId
    distortion: float
    bits: int
    cost: float
    candidates: Tuple[CandidateCost, ...] = ()

    def rejected(self) -> Tuple[CandidateCost, ...]:
        return tuple(c for c in self.candidates if c.mode is not self.mode)


@dataclass(frozen=True)
class FDNormalizers:
    """Medias μ_F (distancia de características) y μ_S (SSE) del pase piloto."""
    mu_f: float = 1.0
    mu_s: float = 1.0
