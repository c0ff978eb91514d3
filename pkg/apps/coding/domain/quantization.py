"""
Uniform Quantization.
Cuantificador uniforme de zona muerta nula (mid-tread) con empates alejados de cero.
"""

import numpy as np

from .entities import QuantParams
from .exceptions import QuantizationOverflow

MAX_LEVEL = 2 ** 23


def quantize(coeffs: np.ndarray, q: QuantParams) -> np.ndarray:
    """round(c/step) con empates alejados de cero, como enteros."""
    coeffs = np.asarray(coeffs, dtype=np.float64)
    magnitude = np.floor(np.abs(coeffs) / q.step + 0.5)
    if magnitude.size and not np.all(magnitude <= MAX_LEVEL):
        raise QuantizationOverflow(float(np.nanmax(magnitude)) if np.any(np.isfinite(magnitude)) else np.inf)
    return (np.sign(coeffs) * magnitude).astype(np.int64)


def dequantize(levels: np.ndarray, q: QuantParams) -> np.ndarray:
    """level·step."""
    return np.asarray(levels, dtype=np.float64) * q.step
