"""
RDO Application Services.
Motor de decisión de modo por bloque y codificación completa de una imagen.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

import numpy as np

from apps.coding.application.services import (
    assemble_image,
    code_candidates,
    reconstruct_blocks,
    write_bitstream,
)
from apps.coding.domain.entities import MID_OFFSET, Bitstream, CodedBlock, ModeId, QuantParams
from apps.coding.domain.interfaces import BitstreamRepositoryInterface
from apps.coding.domain.transforms import dct_inverse, to_scan
from apps.featnet.application.services import FeatNetService
from apps.featnet.domain.entities import FeatNet
from apps.imaging.application.services import extract_blocks, psnr
from apps.imaging.domain.entities import ImagePlane
from apps.imaging.domain.interfaces import ImageRepositoryInterface
from apps.jacobian.application.services import JacobianService
from apps.jacobian.domain.entities import SketchedJacobian
from apps.rdo.domain.distortion import distortion_sse, residual_idse
from apps.rdo.domain.entities import (
    BlockDecision,
    CandidateCost,
    FDNormalizers,
    LambdaNorm,
    Metric,
    RDOConfig,
)
from apps.rdo.domain.exceptions import MissingJacobian
from shared.infrastructure.parallel import parallel_map, split_ranges

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CandidateSet:
    """Un modo aplicado a todos los bloques: niveles, residuo transformado, bits y reconstrucción."""
    mode: ModeId
    levels: np.ndarray
    residual: np.ndarray
    bits: np.ndarray
    unclamped: np.ndarray


def code_all(blocks: np.ndarray, mode: ModeId, q: QuantParams) -> CandidateSet:
    coeffs, levels, dequantized, bits = code_candidates(blocks, mode, q)
    return CandidateSet(
        mode=mode,
        levels=levels,
        residual=coeffs - dequantized,
        bits=np.asarray(bits, dtype=np.int64),
        unclamped=dct_inverse(dequantized, mode) + MID_OFFSET,
    )


def decide_costs(index: int, distortions: Dict[ModeId, float], bits: Dict[ModeId, int], lam: float) -> BlockDecision:
    """min D + λ·R sobre los candidatos; empate a favor de T16."""
    candidates = tuple(
        CandidateCost(
            mode=mode,
            distortion=float(distortions[mode]),
            bits=int(bits[mode]),
            cost=float(distortions[mode]) + lam * int(bits[mode]),
        )
        for mode in ModeId
    )
    best = candidates[0]
    for candidate in candidates[1:]:
        if candidate.cost < best.cost:
            best = candidate
    return BlockDecision(
        index=index,
        mode=best.mode,
        distortion=best.distortion,
        bits=best.bits,
        cost=best.cost,
        candidates=candidates,
    )


def trace_scale(sj: SketchedJacobian) -> float:
    """s̄ = media de ‖Bpix⁽ⁱ⁾‖_F²/256 + τ: escala de la IDSE frente a la SSE para residuo blanco."""
    return float(np.mean(sj.frob_sq)) / 256.0 + sj.tau


def estimate_fd_normalizers(feature_distance: np.ndarray, sse: np.ndarray) -> FDNormalizers:
    """Medias del pase piloto (todos los bloques, ambos modos, QP objetivo)."""
    mu_f = float(np.mean(feature_distance))
    mu_s = float(np.mean(sse))
    if mu_f <= 0 or mu_s <= 0:
        logger.warning(f"Normalizadores FD degenerados (μ_F={mu_f:.6g}, μ_S={mu_s:.6g}); se usa 1")
    return FDNormalizers(mu_f=mu_f if mu_f > 0 else 1.0, mu_s=mu_s if mu_s > 0 else 1.0)


def distortion_fd(
    service: FeatNetService,
    x_block: np.ndarray,
    x_hat_block: np.ndarray,
    fd_blend: float,
    normalizers: FDNormalizers = FDNormalizers(),
) -> float:
    """‖f(xᵢ) − f(x̂ᵢ)‖²/μ_F + fd_blend·SSEᵢ/μ_S con el extractor aplicado al bloque aislado."""
    x_block = np.asarray(x_block, dtype=np.float64).reshape(16, 16)
    x_hat_block = np.asarray(x_hat_block, dtype=np.float64).reshape(16, 16)
    features = service.forward_blocks(np.stack([x_block, x_hat_block]))
    feature_term = float(np.sum((features[0] - features[1]) ** 2))
    sse_term = distortion_sse(x_block.reshape(-1), x_hat_block.reshape(-1))
    return feature_term / normalizers.mu_f + fd_blend * sse_term / normalizers.mu_s


@dataclass(frozen=True, eq=False)
class EncodeResult:
    """Flujo, decisiones y totales de una codificación."""
    config: RDOConfig
    bitstream: Bitstream
    decisions: List[BlockDecision]
    reconstruction: ImagePlane
    unclamped: np.ndarray
    lambda_effective: float
    jacobian: Optional[SketchedJacobian]
    psnr: float
    total_distortion: float
    total_sse: float
    total_idse: Optional[float]

    @property
    def total_bits(self) -> int:
        return self.bitstream.total_bits

    @property
    def t4_count(self) -> int:
        return sum(1 for d in self.decisions if d.mode is ModeId.T4)


class RDOEngine:
    """Decisión de modo por bloque sobre una imagen preparada.

    prepare() codifica todos los bloques con ambos modos; para IDSE calcula antes el
    Jacobiano proyectado (una pasada directa y ℓ inversas) salvo que se reciba hecho.
    """

    def __init__(
        self,
        config: RDOConfig,
        net_service: Optional[FeatNetService] = None,
        jacobian: Optional[SketchedJacobian] = None,
    ):
        self.config = config
        self.net_service = net_service
        self.jacobian = jacobian
        self.plane: Optional[ImagePlane] = None
        self.blocks: Optional[np.ndarray] = None
        self.candidates: Dict[ModeId, CandidateSet] = {}
        self.fd_table: Dict[ModeId, np.ndarray] = {}
        self.normalizers = FDNormalizers()
        self.lam = config.lambda_base

    # ------------------------------------------------------------------ #
    # Preparación
    # ------------------------------------------------------------------ #

    def prepare(self, plane: ImagePlane) -> None:
        config = self.config
        self.plane = plane
        self.blocks = extract_blocks(plane)
        self.candidates = {mode: code_all(self.blocks, mode, config.quant) for mode in ModeId}
        if config.metric is Metric.IDSE:
            self._prepare_jacobian(plane)
        elif config.metric is Metric.FD:
            self._prepare_feature_distances()
        self.lam = self._effective_lambda()
        logger.debug(f"RDO preparada: métrica {config.metric.value}, λ={self.lam:.6g}")

    def _prepare_jacobian(self, plane: ImagePlane) -> None:
        if self.jacobian is None:
            if self.net_service is None or self.config.sketch is None:
                raise MissingJacobian("la métrica IDSE necesita extractor y sketch, o el Jacobiano ya calculado")
            service = JacobianService(self.net_service, self.config.threads)
            self.jacobian = service.compute(plane, self.config.sketch, self.config.tau_policy, self.config.tau)
        elif self.config.tau is not None and self.config.tau != self.jacobian.tau:
            self.jacobian = self.jacobian.with_tau(self.config.tau)
        if self.jacobian.n_b != plane.grid().n_b:
            raise MissingJacobian(f"Jacobiano de {self.jacobian.n_b} bloques para {plane.grid().n_b}")

    def _prepare_feature_distances(self) -> None:
        """Una pasada directa por bloque original y por candidato, repartida entre hilos."""
        if self.net_service is None:
            raise MissingJacobian("la métrica FD necesita el extractor")
        n_b = self.blocks.shape[0]
        originals = self.blocks.reshape(n_b, 16, 16)

        def evaluate(span: range) -> Dict[ModeId, np.ndarray]:
            reference = self.net_service.forward_blocks(originals[span.start:span.stop])
            distances = {}
            for mode, candidate in self.candidates.items():
                rebuilt = candidate.unclamped[span.start:span.stop].reshape(-1, 16, 16)
                features = self.net_service.forward_blocks(rebuilt)
                distances[mode] = np.sum((reference - features) ** 2, axis=1)
            return distances

        parts = parallel_map(evaluate, split_ranges(n_b, self.config.threads), self.config.threads)
        self.fd_table = {mode: np.concatenate([p[mode] for p in parts]) for mode in ModeId}
        sse = np.stack([np.einsum('ij,ij->i', c.residual, c.residual) for c in self.candidates.values()])
        features = np.stack([self.fd_table[m] for m in self.candidates])
        self.normalizers = estimate_fd_normalizers(features, sse)

    def _effective_lambda(self) -> float:
        config = self.config
        lam = config.lambda_base
        if config.lambda_norm is LambdaNorm.NONE:
            return lam
        if config.metric is Metric.IDSE:
            scale = trace_scale(self.jacobian)
            if scale == 0:
                logger.warning("Normalización de λ con escala nula: λ efectivo 0")
            return lam * scale
        if config.metric is Metric.FD:
            return lam * (1.0 + config.fd_blend) / self.normalizers.mu_s
        return lam

    # ------------------------------------------------------------------ #
    # Decisión
    # ------------------------------------------------------------------ #

    def distortions(self, indices: Sequence[int]) -> Dict[ModeId, np.ndarray]:
        """Distorsión de cada candidato para los bloques indicados."""
        indices = np.asarray(indices, dtype=np.int64)
        result = {}
        for mode, candidate in self.candidates.items():
            residual = candidate.residual[indices]
            if self.config.metric is Metric.IDSE:
                result[mode] = residual_idse(self.jacobian.btr[mode][indices], residual, self.jacobian.tau)
            elif self.config.metric is Metric.FD:
                sse = np.einsum('ij,ij->i', residual, residual)
                result[mode] = (
                    self.fd_table[mode][indices] / self.normalizers.mu_f
                    + self.config.fd_blend * sse / self.normalizers.mu_s
                )
            else:
                result[mode] = np.einsum('ij,ij->i', residual, residual)
        return result

    def _decide_range(self, span: range) -> List[BlockDecision]:
        indices = list(span)
        distortions = self.distortions(indices)
        return [
            decide_costs(
                i,
                {mode: distortions[mode][k] for mode in ModeId},
                {mode: self.candidates[mode].bits[i] for mode in ModeId},
                self.lam,
            )
            for k, i in enumerate(indices)
        ]

    def decide_block(self, i: int) -> BlockDecision:
        self.plane.grid().check_index(i)
        return self._decide_range(range(i, i + 1))[0]

    def decide_all(self) -> List[BlockDecision]:
        """Decisiones de todos los bloques, en orden de índice."""
        chunks = split_ranges(self.blocks.shape[0], self.config.threads)
        parts = parallel_map(self._decide_range, chunks, self.config.threads)
        return [decision for part in parts for decision in part]

    # ------------------------------------------------------------------ #
    # Codificación
    # ------------------------------------------------------------------ #

    def coded_blocks(self, decisions: Sequence[BlockDecision]) -> List[CodedBlock]:
        return [
            CodedBlock.create(d.mode, to_scan(self.candidates[d.mode].levels[d.index], d.mode), d.bits)
            for d in decisions
        ]

    def encode(self, plane: ImagePlane) -> EncodeResult:
        self.prepare(plane)
        config = self.config
        decisions = self.decide_all()
        coded = self.coded_blocks(decisions)
        unclamped = reconstruct_blocks(coded, config.quant)
        bitstream = write_bitstream(plane, coded, config.quant, config.metric.tag)
        grid = plane.grid()
        reconstruction = assemble_image(unclamped, grid, plane.orig_width, plane.orig_height)

        pixel_residual = self.blocks - unclamped
        total_sse = float(np.sum(pixel_residual ** 2))
        total_idse = None
        if self.jacobian is not None:
            projected = np.einsum('bij,bj->bi', self.jacobian.bpix, pixel_residual)
            total_idse = float(np.sum(projected ** 2)) + self.jacobian.tau * total_sse
        result = EncodeResult(
            config=config,
            bitstream=bitstream,
            decisions=decisions,
            reconstruction=reconstruction,
            unclamped=unclamped,
            lambda_effective=self.lam,
            jacobian=self.jacobian,
            psnr=psnr(plane, reconstruction),
            total_distortion=float(sum(d.distortion for d in decisions)),
            total_sse=total_sse,
            total_idse=total_idse,
        )
        logger.info(
            f"Imagen codificada: métrica {config.metric.value}, QP {config.qp}, "
            f"{result.total_bits} bits, PSNR {result.psnr:.3f} dB, {result.t4_count}/{grid.n_b} bloques T4"
        )
        return result


def encode_image(
    plane: ImagePlane,
    config: RDOConfig,
    net: Optional[FeatNet] = None,
    jacobian: Optional[SketchedJacobian] = None,
    net_service: Optional[FeatNetService] = None,
) -> EncodeResult:
    if net_service is None and net is not None:
        net_service = FeatNetService(net)
    return RDOEngine(config, net_service, jacobian).encode(plane)


def decide_block(
    i: int,
    plane: ImagePlane,
    config: RDOConfig,
    net: Optional[FeatNet] = None,
    jacobian: Optional[SketchedJacobian] = None,
) -> BlockDecision:
    engine = RDOEngine(config, FeatNetService(net) if net is not None else None, jacobian)
    engine.prepare(plane)
    return engine.decide_block(i)


class EncodeService:
    """Codificación de fichero a fichero sobre los repositorios inyectados."""

    def __init__(
        self,
        image_repository: ImageRepositoryInterface,
        bitstream_repository: BitstreamRepositoryInterface,
    ):
        self.image_repository = image_repository
        self.bitstream_repository = bitstream_repository

    def load(self, source) -> ImagePlane:
        return self.image_repository.load(source)

    def encode_to(
        self,
        plane: ImagePlane,
        config: RDOConfig,
        target,
        net: Optional[FeatNet] = None,
    ) -> EncodeResult:
        """Codificar plane y guardar el flujo en target."""
        result = encode_image(plane, config, net=net)
        self.bitstream_repository.save(target, result.bitstream)
        return result
