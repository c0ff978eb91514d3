"""
Distortion Measures.
SSE e IDSE en el dominio transformado, por bloque o vectorizadas sobre pilas de bloques.
"""

import numpy as np

from .exceptions import DistortionShapeMismatch


def distortion_sse(y: np.ndarray, y_hat: np.ndarray):
    """‖y − ŷ‖² sobre el último eje."""
    y = np.asarray(y, dtype=np.float64)
    y_hat = np.asarray(y_hat, dtype=np.float64)
    if y.shape != y_hat.shape:
        raise DistortionShapeMismatch(f"formas {y.shape} y {y_hat.shape}")
    diff = y - y_hat
    result = np.einsum('...j,...j->...', diff, diff)
    return float(result) if result.ndim == 0 else result


def residual_idse(btr: np.ndarray, residual: np.ndarray, tau: float = 0.0):
    """‖Btr·r‖² + τ‖r‖² para r (..., 256) y Btr (..., ℓ, 256)."""
    btr = np.asarray(btr, dtype=np.float64)
    residual = np.asarray(residual, dtype=np.float64)
    if btr.shape[-1] != residual.shape[-1] or btr.shape[:-2] != residual.shape[:-1]:
        raise DistortionShapeMismatch(f"matriz {btr.shape} y residuo {residual.shape}")
    projected = np.einsum('...ij,...j->...i', btr, residual)
    result = np.einsum('...i,...i->...', projected, projected)
    if tau:
        result = result + tau * np.einsum('...j,...j->...', residual, residual)
    return float(result) if np.ndim(result) == 0 else result


def distortion_idse(btr: np.ndarray, y: np.ndarray, y_hat: np.ndarray, tau: float):
    """IDSE con término de Tikhonov: ‖Btr(y−ŷ)‖² + τ‖y−ŷ‖²."""
    return residual_idse(btr, np.asarray(y, dtype=np.float64) - np.asarray(y_hat, dtype=np.float64), tau)
