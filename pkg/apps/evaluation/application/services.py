"""
Evaluation Application Services.
Barridos de QP, contabilidad de FLOPs y experimentos de localización y agregación.
"""

import logging
import math
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.stats import pearsonr

from apps.coding.application.services import encode_forced
from apps.coding.domain.entities import ModeId, QuantParams
from apps.evaluation.domain.entities import (
    CorrelationReport,
    FlopEstimate,
    MonotonicityReport,
    RDCurve,
    RDPoint,
)
from apps.evaluation.domain.exceptions import (
    DegenerateCorrelation,
    InsufficientRegions,
    InvalidSweep,
    MismatchedCurves,
)
from apps.featnet.application.services import FeatNetService, PassCounters
from apps.featnet.domain.entities import FeatNet, FeatNetSpec
from apps.imaging.application.services import extract_blocks
from apps.imaging.domain.entities import BLOCK_SIZE, ImagePlane
from apps.jacobian.application.services import JacobianService
from apps.jacobian.domain.entities import SketchedJacobian
from apps.rdo.application.services import RDOEngine
from apps.rdo.domain.entities import BlockDecision, Metric, RDOConfig
from apps.rdo.domain.exceptions import MissingJacobian
from apps.sketching.domain.entities import GENERATOR_NAME
from shared.domain.entities import require_positive
from shared.domain.exceptions import ValidationException

logger = logging.getLogger(__name__)

REGION_SIZE = 128
MIN_CORRELATION_SAMPLES = 20


# ---------------------------------------------------------------------- #
# Complejidad
# ---------------------------------------------------------------------- #

def forward_macs(spec: FeatNetSpec, height: int, width: int) -> int:
    """MACs de una pasada directa, capa a capa."""
    shapes = spec.shapes(height, width)
    return sum(layer.macs(shape) for layer, shape in zip(spec.layers, shapes))


def macs_per_pixel(spec: FeatNetSpec) -> float:
    """Coste por píxel de entrada; constante para redes convolucionales con relleno."""
    side = 16 * spec.divisibility
    return forward_macs(spec, side, side) / float(side * side)


def flop_estimate(
    height: int,
    width: int,
    region_height: int,
    region_width: int,
    n_r: int,
    ell: int,
    per_pixel: float,
) -> FlopEstimate:
    """FD evalúa la imagen n_r + 1 veces; IDSE hace una directa y ℓ inversas sobre la región."""
    for name, value in (('h', height), ('w', width), ('hr', region_height), ('wr', region_width), ('C', per_pixel)):
        require_positive(name, value)
    if n_r < 0 or ell < 0:
        raise ValidationException('nr/ell', f"deben ser no negativos (recibido {n_r}, {ell})")
    return FlopEstimate(
        fd_flops=float(height * width * (n_r + 1) * per_pixel),
        idse_flops=float(region_height * region_width * (2 * ell + 1) * per_pixel),
    )


# ---------------------------------------------------------------------- #
# Distancias medidas
# ---------------------------------------------------------------------- #

def measured_idse(sj: SketchedJacobian, plane: ImagePlane, reconstruction: ImagePlane) -> float:
    """Σᵢ ‖Bpix⁽ⁱ⁾ eᵢ‖² + τ‖eᵢ‖² sobre la imagen decodificada, eᵢ = xᵢ − x̂ᵢ.

    Es el mismo objetivo que minimiza la RDO con IDSE, medido tras el recorte a [0, 255].
    """
    residual = extract_blocks(plane) - extract_blocks(reconstruction)
    projected = np.einsum('bij,bj->bi', sj.bpix, residual)
    return float(np.sum(projected ** 2) + sj.tau * np.sum(residual ** 2))


def feature_distance(service: FeatNetService, reference: np.ndarray, pixels: np.ndarray) -> float:
    """‖f(x) − f(x̂)‖² con f(x) ya evaluado por forward_blocks."""
    features = service.forward_blocks(np.asarray(pixels, dtype=np.float64)[None])[0]
    return float(np.sum((reference - features) ** 2))


def per_block_feature_distance(service: FeatNetService, original: np.ndarray, reconstructed: np.ndarray) -> np.ndarray:
    """Distancia de características de cada bloque 16x16 evaluado aislado, en orden de bloque."""
    original = np.asarray(original, dtype=np.float64)
    reconstructed = np.asarray(reconstructed, dtype=np.float64)
    rows, cols = original.shape[0] // BLOCK_SIZE, original.shape[1] // BLOCK_SIZE

    def split(array: np.ndarray) -> np.ndarray:
        tiles = array.reshape(rows, BLOCK_SIZE, cols, BLOCK_SIZE).swapaxes(1, 2)
        return tiles.reshape(rows * cols, BLOCK_SIZE, BLOCK_SIZE)

    difference = service.forward_blocks(split(original)) - service.forward_blocks(split(reconstructed))
    return np.sum(difference ** 2, axis=1)


# ---------------------------------------------------------------------- #
# Barrido de QP
# ---------------------------------------------------------------------- #

def validate_qps(qps: Sequence[int]) -> List[int]:
    qps = [int(qp) for qp in qps]
    if not qps or any(b <= a for a, b in zip(qps, qps[1:])):
        raise InvalidSweep(qps)
    for qp in qps:
        QuantParams(qp)
    return qps


def curve_metadata(config: RDOConfig, sj: Optional[SketchedJacobian]) -> Dict[str, str]:
    metadata = {
        'metric': config.metric.value,
        'c': f"{config.c:.9g}",
        'lambda_norm': config.lambda_norm.value,
        'tau_policy': config.tau_policy.value,
        'fd_blend': f"{config.fd_blend:.9g}",
        'generator': GENERATOR_NAME,
    }
    spec = config.sketch
    if spec is None and sj is not None and sj.sketch is not None:
        spec = sj.sketch.spec
    if spec is not None:
        metadata.update(spec.describe())
    if sj is not None:
        metadata['tau'] = f"{sj.tau if config.tau is None else config.tau:.9g}"
    return metadata


class SweepService:
    """Barrido de QP de una imagen con una configuración RDO.

    El Jacobiano se calcula una vez por imagen y se reutiliza en todos los QPs.
    Con extractor disponible se miden también la IDSE y la distancia de
    características reales de cada punto.
    Las decisiones por bloque del último barrido quedan en decisions, por QP.
    """

    def __init__(self, net: Optional[FeatNet] = None):
        self.net = net
        self.counters = PassCounters()
        self.net_service = FeatNetService(net, self.counters) if net is not None else None
        self.measure_service = FeatNetService(net) if net is not None else None
        self.decisions: Dict[int, List[BlockDecision]] = {}

    def jacobian_for(self, plane: ImagePlane, config: RDOConfig) -> Tuple[SketchedJacobian, int]:
        """Jacobiano proyectado y MACs empleados en calcularlo."""
        if self.net_service is None or config.sketch is None:
            raise MissingJacobian("el barrido necesita extractor y sketch para medir la IDSE")
        self.counters.reset()
        sj = JacobianService(self.net_service, config.threads).compute(
            plane, config.sketch, config.tau_policy, config.tau,
        )
        return sj, self.counters.macs + self.counters.backward_macs

    def sweep(
        self,
        plane: ImagePlane,
        config: RDOConfig,
        qps: Sequence[int],
        jacobian: Optional[SketchedJacobian] = None,
        label: Optional[str] = None,
    ) -> RDCurve:
        qps = validate_qps(qps)
        jacobian_macs = 0
        measurable = config.sketch is not None and self.net_service is not None
        if jacobian is None and (config.metric is Metric.IDSE or measurable):
            jacobian, macs = self.jacobian_for(plane, config)
            # solo la RDO con IDSE paga la pasada del Jacobiano
            jacobian_macs = macs if config.metric is Metric.IDSE else 0

        reference = None
        if self.measure_service is not None:
            reference = self.measure_service.forward_blocks(plane.pixels.astype(np.float64)[None])[0]

        self.decisions = {}
        points = []
        for qp in qps:
            self.counters.reset()
            result = RDOEngine(config.with_qp(qp), self.net_service, jacobian).encode(plane)
            self.decisions[qp] = result.decisions
            flops = self.counters.macs + self.counters.backward_macs + jacobian_macs
            point = RDPoint(
                qp=qp,
                bits=result.total_bits,
                bpp=result.total_bits / float(plane.orig_width * plane.orig_height),
                psnr=result.psnr,
                idse=measured_idse(jacobian, plane, result.reconstruction) if jacobian is not None else math.nan,
                feature_distance=(
                    feature_distance(self.measure_service, reference, result.reconstruction.pixels)
                    if reference is not None else math.nan
                ),
                encode_flops=int(flops),
            )
            points.append(point)
            logger.info(
                f"Punto del barrido: {config.metric.value} QP {qp}, {point.bits} bits, "
                f"PSNR {point.psnr:.3f} dB, IDSE {point.idse:.6g}"
            )
        return RDCurve(
            label=label or config.metric.value,
            points=tuple(points),
            metadata=curve_metadata(config, jacobian),
        )


def sweep(
    plane: ImagePlane,
    config: RDOConfig,
    qps: Sequence[int],
    net: Optional[FeatNet] = None,
    jacobian: Optional[SketchedJacobian] = None,
) -> RDCurve:
    return SweepService(net).sweep(plane, config, qps, jacobian)


def pool_curves(curves: Sequence[RDCurve], label: str) -> RDCurve:
    """Curva de un corpus: por QP suma bits, IDSE, distancia y FLOPs de todas las imágenes.

    El bpp se recalcula sobre el total de píxeles y el PSNR es la media por imagen.
    Los metadatos conservan las claves en que coinciden todas las curvas.
    """
    if not curves:
        raise MismatchedCurves("no hay curvas que agregar")
    qps = curves[0].qps
    for curve in curves[1:]:
        if curve.qps != qps:
            raise MismatchedCurves(f"QPs {curve.qps} de {curve.label!r} frente a {qps}")

    points = []
    for k, qp in enumerate(qps):
        column = [curve.points[k] for curve in curves]
        bits = sum(p.bits for p in column)
        pixels = sum(p.bits / p.bpp for p in column)
        points.append(RDPoint(
            qp=qp,
            bits=bits,
            bpp=bits / pixels,
            psnr=float(np.mean([p.psnr for p in column])),
            idse=float(sum(p.idse for p in column)),
            feature_distance=float(sum(p.feature_distance for p in column)),
            encode_flops=sum(p.encode_flops for p in column),
        ))
    shared = {
        key: value for key, value in curves[0].metadata.items()
        if all(curve.metadata.get(key) == value for curve in curves[1:])
    }
    shared['images'] = str(len(curves))
    logger.info(f"Curva agregada {label!r}: {len(curves)} imágenes, {len(qps)} QPs")
    return RDCurve(label=label, points=tuple(points), metadata=shared)


# ---------------------------------------------------------------------- #
# Experimentos
# ---------------------------------------------------------------------- #

def block_supported_residuals(plane: ImagePlane, reconstructed_blocks: np.ndarray) -> np.ndarray:
    """Una imagen de residuo por bloque, nula fuera de él: (n_b, alto, ancho)."""
    grid = plane.grid()
    residual = np.asarray(reconstructed_blocks, dtype=np.float64) - extract_blocks(plane)
    images = np.zeros((grid.n_b, plane.height, plane.width))
    for i in range(grid.n_b):
        top, left = grid.block_origin(i)
        images[i, top:top + BLOCK_SIZE, left:left + BLOCK_SIZE] = residual[i].reshape(BLOCK_SIZE, BLOCK_SIZE)
    return images


def taylor_regime(
    plane: ImagePlane,
    net: FeatNet,
    qps: Sequence[int],
    mode: ModeId = ModeId.T16,
) -> Dict[int, float]:
    """Media de |IDSE exacta − distancia real| / distancia real por QP, con residuos de un solo bloque.

    La IDSE exacta usa el producto Jacobiano-vector sin sketch ni localización.
    """
    service = FeatNetService(net)
    x = plane.pixels.astype(np.float64)
    tape = service.forward_tape(x)
    result = {}
    for qp in validate_qps(sorted(set(qps))):
        forced = encode_forced(plane, mode, QuantParams(qp))
        residuals = block_supported_residuals(plane, forced.unclamped)
        linear = service.jvp(x, residuals.reshape(len(residuals), -1), tape=tape)
        idse = np.sum(linear ** 2, axis=1)
        actual = np.sum((service.forward(x[None] + residuals) - tape.features) ** 2, axis=1)
        valid = actual > 0
        result[qp] = float(np.mean(np.abs(idse[valid] - actual[valid]) / actual[valid])) if valid.any() else 0.0
        logger.debug(f"Régimen de Taylor QP {qp}: brecha relativa {result[qp]:.6g}")
    return result


def fd_monotonicity(
    plane: ImagePlane,
    config: RDOConfig,
    qps: Sequence[int],
    net: FeatNet,
    jacobian: Optional[SketchedJacobian] = None,
) -> MonotonicityReport:
    """Distancia por bloque de la reconstrucción decodificada en cada QP del barrido."""
    qps = validate_qps(qps)
    service = FeatNetService(net)
    if jacobian is None and config.metric is Metric.IDSE:
        jacobian = JacobianService(service, config.threads).compute(
            plane, config.sketch, config.tau_policy, config.tau,
        )
    rows = []
    for qp in qps:
        result = RDOEngine(config.with_qp(qp), service, jacobian).encode(plane)
        rows.append(per_block_feature_distance(service, plane.pixels, result.reconstruction.pixels))
    report = MonotonicityReport(qps=tuple(qps), distances=np.stack(rows))
    logger.info(f"Bloques con distancia no monótona en QP: {len(report.non_monotone_blocks)}/{plane.grid().n_b}")
    return report


def region_origins(plane: ImagePlane, region: int = REGION_SIZE) -> List[Tuple[int, int]]:
    return [
        (top, left)
        for top in range(0, plane.height - region + 1, region)
        for left in range(0, plane.width - region + 1, region)
    ]


def pearson(a: np.ndarray, b: np.ndarray) -> float:
    if np.ptp(a) == 0 or np.ptp(b) == 0:
        raise DegenerateCorrelation("varianza nula en alguna de las métricas")
    return float(pearsonr(a, b)[0])


def aggregation_correlation(
    plane: ImagePlane,
    net: FeatNet,
    qps: Sequence[int],
    mode: ModeId = ModeId.T16,
    region: int = REGION_SIZE,
) -> CorrelationReport:
    """Correlación entre la distancia de cada región y la suma de distancias de sus bloques.

    Todos los bloques se codifican con el mismo modo para aislar el efecto de la agregación.
    """
    qps = validate_qps(qps)
    origins = region_origins(plane, region)
    samples = len(origins) * len(qps)
    if samples < MIN_CORRELATION_SAMPLES:
        raise InsufficientRegions(samples, MIN_CORRELATION_SAMPLES)

    service = FeatNetService(net)
    x = plane.pixels.astype(np.float64)
    originals = np.stack([x[t:t + region, l:l + region] for t, l in origins])
    reference = service.forward(originals)
    region_distances, block_sums = [], []
    for qp in qps:
        decoded = encode_forced(plane, mode, QuantParams(qp)).reconstruction.pixels.astype(np.float64)
        rebuilt = np.stack([decoded[t:t + region, l:l + region] for t, l in origins])
        region_distances.extend(np.sum((reference - service.forward(rebuilt)) ** 2, axis=1))
        for original, reconstructed in zip(originals, rebuilt):
            block_sums.append(float(np.sum(per_block_feature_distance(service, original, reconstructed))))

    region_distances = np.asarray(region_distances)
    block_sums = np.asarray(block_sums)
    r = pearson(region_distances, block_sums)
    report = CorrelationReport(r=r, region_distances=region_distances, block_sums=block_sums)
    logger.info(f"Correlación de agregación: {report.describe()}")
    return report
