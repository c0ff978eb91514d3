"""
Jacobian Application Services.
Cálculo de S·J_f(x) con ℓ pasadas inversas sobre la imagen completa, localización por
bloques, paso al dominio transformado, τ y mapas de importancia.
"""

import logging
from typing import Optional, Union

import numpy as np

from apps.coding.domain.entities import ModeId
from apps.coding.domain.transforms import dct_forward
from apps.featnet.application.services import FeatNetService, ForwardTape
from apps.featnet.domain.entities import FeatNet
from apps.imaging.domain.entities import BLOCK_SIZE, MAX_SAMPLE, BlockGrid, ImagePlane
from apps.imaging.domain.interfaces import ImageRepositoryInterface
from apps.jacobian.domain.entities import LocalizationReport, SketchedJacobian, TauPolicy
from apps.jacobian.domain.exceptions import GridMismatch
from apps.jacobian.domain.interfaces import SidecarRepositoryInterface
from apps.sketching.application.services import materialize
from apps.sketching.domain.entities import SketchKind, SketchMatrix, SketchSpec
from shared.domain.exceptions import ValidationException
from shared.infrastructure.parallel import parallel_map, split_ranges

logger = logging.getLogger(__name__)

REGION_SIZE = 128
BLOCK_PIXELS = BLOCK_SIZE * BLOCK_SIZE


def localize(full: np.ndarray, grid: BlockGrid) -> np.ndarray:
    """Columnas de cada bloque: (ℓ, n_p) a (n_b, ℓ, 256) en orden fila-mayor dentro del bloque."""
    full = np.asarray(full, dtype=np.float64)
    n_p = grid.width * grid.height
    if full.ndim != 2 or full.shape[1] != n_p:
        raise GridMismatch(n_p, full.shape[-1])
    ell = full.shape[0]
    blocks = grid.to_blocks(full.reshape(ell, grid.height, grid.width))
    return np.ascontiguousarray(np.swapaxes(blocks, 0, 1))


def to_transform_domain(bpix: np.ndarray, mode: ModeId) -> np.ndarray:
    """Btr = Bpix·D: cada fila pasa por la transformada separable del modo."""
    bpix = np.asarray(bpix, dtype=np.float64)
    if bpix.shape[-1] != 256:
        raise ValidationException('bpix', f"las filas deben tener 256 columnas (forma {bpix.shape})")
    return dct_forward(bpix, mode)


def frobenius_sq(bpix: np.ndarray) -> np.ndarray:
    """‖Bpix⁽ⁱ⁾‖_F² de cada bloque."""
    return np.einsum('bij,bij->b', bpix, bpix)


def compute_tau(source: Union[SketchedJacobian, np.ndarray], policy: TauPolicy = TauPolicy.ENERGY) -> float:
    """τ a partir de ‖Bpix⁽ⁱ⁾‖_F² por bloque.

    ENERGY: media de ‖Bpix⁽ⁱ⁾‖_F² / 256, ganancia media por píxel de ‖Bpix·e‖².
    MEAN: media de las normas. RMS: su media cuadrática.
    """
    frob_sq = source.frob_sq if isinstance(source, SketchedJacobian) else np.asarray(source, dtype=np.float64)
    if frob_sq.size == 0:
        return 0.0
    if policy is TauPolicy.ENERGY:
        return float(np.mean(frob_sq) / BLOCK_PIXELS)
    if policy is TauPolicy.RMS:
        return float(np.sqrt(np.mean(frob_sq)))
    return float(np.mean(np.sqrt(frob_sq)))


def importance_map(sj: SketchedJacobian) -> np.ndarray:
    """Norma al cuadrado de cada columna del Jacobiano proyectado, como mapa (alto x ancho)."""
    column_sq = np.einsum('bij,bij->bj', sj.bpix, sj.bpix)
    return sj.grid.from_blocks(column_sq)


def importance_pixels(values: np.ndarray, orig_width: int, orig_height: int) -> np.ndarray:
    """Mapa normalizado a [0, 255] y recortado a la región visible."""
    visible = np.asarray(values, dtype=np.float64)[:orig_height, :orig_width]
    peak = float(visible.max()) if visible.size else 0.0
    if peak <= 0:
        return np.zeros(visible.shape, dtype=np.uint8)
    return np.rint(visible / peak * MAX_SAMPLE).astype(np.uint8)


def localization_error(full: np.ndarray, grid: BlockGrid, residual: np.ndarray) -> LocalizationReport:
    """‖S·J·e‖² frente a Σᵢ‖Bpix⁽ⁱ⁾·eᵢ‖² para un residuo e de la imagen completa."""
    full = np.asarray(full, dtype=np.float64)
    residual = np.asarray(residual, dtype=np.float64).reshape(-1)
    if residual.size != full.shape[1]:
        raise GridMismatch(full.shape[1], residual.size)
    projected = full @ residual
    bpix = localize(full, grid)
    blocks = grid.to_blocks(residual.reshape(grid.height, grid.width))
    per_block = np.einsum('bij,bj->bi', bpix, blocks)
    return LocalizationReport(
        global_idse=float(projected @ projected),
        localized_idse=float(np.sum(per_block ** 2)),
    )


class JacobianService:
    """Jacobiano proyectado de una imagen completa con el extractor dado."""

    def __init__(self, net_service: FeatNetService, threads: int = 1):
        self.net_service = net_service
        self.threads = threads

    def sketch_for(self, tape: ForwardTape, spec: SketchSpec) -> SketchMatrix:
        """Materializar S para la dimensión de características de esta imagen."""
        n_f = tape.output.size
        if spec.n_f != n_f:
            spec = spec.with_n_f(n_f)
        if spec.kind is SketchKind.DCT_TOP16:
            return materialize(spec, tape.features, tape.output.shape[1:])
        return materialize(spec)

    def sketch_rows(self, x: np.ndarray, sketch: SketchMatrix, tape: ForwardTape) -> np.ndarray:
        """Fila j = vjp(x, s_j); las ℓ filas se reparten en trozos entre hilos."""
        chunks = split_ranges(sketch.ell, self.threads)
        rows = parallel_map(
            lambda span: self.net_service.vjp(x, sketch.matrix[span.start:span.stop], tape=tape),
            chunks,
            self.threads,
        )
        return np.concatenate(rows, axis=0)

    def full_matrix(self, pixels: np.ndarray, spec: SketchSpec):
        """(S·J_f(x), S) para una matriz de píxeles: una pasada directa y ℓ inversas."""
        x = np.asarray(pixels, dtype=np.float64)
        tape = self.net_service.forward_tape(x)
        sketch = self.sketch_for(tape, spec)
        return self.sketch_rows(x, sketch, tape), sketch

    def compute(
        self,
        plane: ImagePlane,
        spec: SketchSpec,
        tau_policy: TauPolicy = TauPolicy.ENERGY,
        tau: Optional[float] = None,
    ) -> SketchedJacobian:
        grid = plane.grid()
        full, sketch = self.full_matrix(plane.pixels, spec)
        bpix = localize(full, grid)
        btr = {mode: to_transform_domain(bpix, mode) for mode in ModeId}
        frob_sq = frobenius_sq(bpix)
        if tau is None:
            tau = compute_tau(frob_sq, tau_policy)
        elif tau < 0:
            raise ValidationException('tau', f"debe ser no negativo (recibido {tau})")
        if tau == 0:
            logger.warning("τ = 0: la IDSE no incluye término SSE")
        logger.info(
            f"Jacobiano proyectado: {sketch.spec.kind.value}, ℓ={sketch.ell}, "
            f"n_f={sketch.n_f}, {grid.n_b} bloques, τ={tau:.6g}"
        )
        return SketchedJacobian(
            ell=sketch.ell,
            grid=grid,
            bpix=bpix,
            btr=btr,
            tau=float(tau),
            frob_sq=frob_sq,
            sketch=sketch,
            full=full,
        )

    def localized_first_importance(self, plane: ImagePlane, spec: SketchSpec, region: int = REGION_SIZE) -> np.ndarray:
        """Importancia calculada por regiones independientes de region x region y teselada."""
        if region <= 0 or region % BLOCK_SIZE:
            raise ValidationException('region', f"debe ser múltiplo positivo de {BLOCK_SIZE}")
        pixels = plane.pixels.astype(np.float64)
        result = np.zeros(pixels.shape)
        for top in range(0, plane.height, region):
            for left in range(0, plane.width, region):
                window = pixels[top:top + region, left:left + region]
                full, _ = self.full_matrix(window, spec)
                result[top:top + region, left:left + region] = np.sum(full ** 2, axis=0).reshape(window.shape)
        logger.info(f"Mapa de importancia localizado primero: regiones de {region}x{region}")
        return result


class ImportanceService:
    """Mapa de importancia de fichero a fichero sobre los repositorios inyectados."""

    def __init__(
        self,
        jacobian_service: JacobianService,
        image_repository: ImageRepositoryInterface,
        sidecar_repository: SidecarRepositoryInterface,
    ):
        self.jacobian_service = jacobian_service
        self.image_repository = image_repository
        self.sidecar_repository = sidecar_repository

    def load(self, source) -> ImagePlane:
        return self.image_repository.load(source)

    def export(
        self,
        plane: ImagePlane,
        spec: SketchSpec,
        target,
        localized_first: bool = False,
        sidecar=None,
    ) -> np.ndarray:
        """Guardar el mapa normalizado en target y devolver los valores sin normalizar."""
        if localized_first:
            values = self.jacobian_service.localized_first_importance(plane, spec)
        else:
            sj = self.jacobian_service.compute(plane, spec)
            values = importance_map(sj)
            if sidecar:
                self.sidecar_repository.save(sidecar, sj)
        self.image_repository.save(target, importance_pixels(values, plane.orig_width, plane.orig_height))
        return values


def compute_sketched_jacobian(
    net: FeatNet,
    plane: ImagePlane,
    spec: SketchSpec,
    tau_policy: TauPolicy = TauPolicy.ENERGY,
    tau: Optional[float] = None,
    threads: int = 1,
) -> SketchedJacobian:
    return JacobianService(FeatNetService(net), threads).compute(plane, spec, tau_policy, tau)


def sketch_spec_for(net: FeatNet, plane: ImagePlane, kind: str, ell: int, seed: int) -> SketchSpec:
    """SketchSpec con la n_f que produce el extractor sobre el plano rellenado."""
    n_f = net.spec.output_dim(plane.height, plane.width)
    return SketchSpec(kind=SketchKind(kind), ell=ell, seed=seed, n_f=n_f)
