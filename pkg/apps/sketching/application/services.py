"""
Sketching Application Services.
Cota de Johnson-Lindenstrauss, materialización de S y aplicación S·z.
"""

import logging
import math
from typing import Optional, Sequence, Tuple, Union

import numpy as np
from scipy.fft import dct, dctn

from apps.sketching.domain.entities import SketchKind, SketchMatrix, SketchSpec
from apps.sketching.domain.exceptions import (
    ChannelLayoutError,
    InvalidSketchSpec,
    SketchLengthMismatch,
)
from shared.domain.entities import frozen_array

logger = logging.getLogger(__name__)


def jl_min_dim(n_r: int, epsilon: float) -> int:
    """Menor entero estrictamente mayor que 8·ln(n_r)/ε²."""
    if n_r < 2:
        raise InvalidSketchSpec(f"n_r debe ser al menos 2 (recibido {n_r})")
    if not 0 < epsilon < 1:
        raise InvalidSketchSpec(f"epsilon debe estar en (0, 1) (recibido {epsilon})")
    return math.floor(8.0 * math.log(n_r) / epsilon ** 2) + 1


def _generator(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


def rademacher(rng: np.random.Generator, shape: Tuple[int, int]) -> np.ndarray:
    """Entradas ±1/√ℓ equiprobables; ℓ es shape[0]."""
    signs = rng.integers(0, 2, size=shape, dtype=np.int8) * 2 - 1
    return signs.astype(np.float64) / math.sqrt(shape[0])


def dct_basis_rows(
    feature_shape: Tuple[int, int, int],
    selection: np.ndarray,
) -> np.ndarray:
    """Filas ortonormales (C·k x n_f): funciones base DCT 2-D elegidas por canal."""
    channels, height, width = feature_shape
    basis_h = dct(np.eye(height), norm='ortho', axis=0)
    basis_w = dct(np.eye(width), norm='ortho', axis=0)
    top_k = selection.shape[1]
    rows = np.zeros((channels, top_k, channels, height, width))
    ky, kx = np.divmod(selection, width)
    for c in range(channels):
        rows[c, :, c] = np.einsum('jy,jx->jyx', basis_h[ky[c]], basis_w[kx[c]])
    return rows.reshape(channels * top_k, channels * height * width)


def top_coefficients(features: np.ndarray, feature_shape: Tuple[int, int, int], top_k: int) -> np.ndarray:
    """Índices (C, k) de los k coeficientes DCT de mayor magnitud de cada canal."""
    channels, height, width = feature_shape
    coeffs = dctn(features.reshape(feature_shape), axes=(1, 2), norm='ortho')
    magnitude = np.abs(coeffs.reshape(channels, height * width))
    order = np.argsort(-magnitude, axis=1, kind='stable')
    return np.ascontiguousarray(order[:, :top_k])


def materialize(
    spec: SketchSpec,
    features: Optional[np.ndarray] = None,
    feature_shape: Optional[Tuple[int, int, int]] = None,
) -> SketchMatrix:
    """Construir S (ℓ x n_f) de forma determinista a partir del spec.

    DctTop16 necesita la forma (C, h, w) de las características y el vector de
    características de la imagen actual, del que se eligen los coeficientes.
    """
    rng = _generator(spec.seed)

    if spec.kind is SketchKind.RADEMACHER:
        matrix = rademacher(rng, (spec.ell, spec.n_f))
        return SketchMatrix(matrix=frozen_array(matrix), spec=spec)

    if spec.kind is SketchKind.GAUSSIAN:
        matrix = rng.normal(0.0, 1.0 / math.sqrt(spec.ell), size=(spec.ell, spec.n_f))
        return SketchMatrix(matrix=frozen_array(matrix), spec=spec)

    if feature_shape is None or int(np.prod(feature_shape)) != spec.n_f:
        raise ChannelLayoutError(spec.n_f, feature_shape)
    channels, height, width = feature_shape
    if spec.top_k > height * width:
        raise InvalidSketchSpec(
            f"top_k={spec.top_k} supera los {height * width} coeficientes por canal"
        )
    if features is None:
        raise InvalidSketchSpec("dcttop16 requiere las características de la imagen")
    features = np.asarray(features, dtype=np.float64).reshape(-1)
    if features.size != spec.n_f:
        raise SketchLengthMismatch(spec.n_f, features.size)

    selection = top_coefficients(features, feature_shape, spec.top_k)
    retained = dct_basis_rows(feature_shape, selection)
    reduction = rademacher(rng, (spec.ell, retained.shape[0]))
    logger.debug(
        f"Sketch dcttop16: {channels} canales, {spec.top_k} coeficientes por canal, ell={spec.ell}"
    )
    return SketchMatrix(
        matrix=frozen_array(reduction @ retained),
        spec=spec,
        selection=frozen_array(selection, dtype=np.int64),
        feature_shape=tuple(feature_shape),
    )


def apply(sketch: Union[SketchMatrix, np.ndarray], z: Sequence[float]) -> np.ndarray:
    """S·z para un vector (n_f,) o cada columna de una matriz (n_f, m)."""
    matrix = sketch.matrix if isinstance(sketch, SketchMatrix) else np.asarray(sketch, dtype=np.float64)
    z = np.asarray(z, dtype=np.float64)
    if z.shape[0] != matrix.shape[1]:
        raise SketchLengthMismatch(matrix.shape[1], z.shape[0])
    return matrix @ z
