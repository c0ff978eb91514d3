"""
Shared Domain Entities.
Abstracciones compartidas entre dominios.
"""

from typing import Union

import numpy as np

from shared.domain.exceptions import ValidationException

ArrayLike = Union[np.ndarray, list, tuple]


def frozen_array(values: ArrayLike, dtype=np.float64) -> np.ndarray:
    """Copia contigua de solo lectura, para value objects inmutables."""
    array = np.array(values, dtype=dtype, copy=True, order='C')
    array.setflags(write=False)
    return array


def require_positive(field: str, value: float) -> None:
    """Validar que un parámetro sea estrictamente positivo."""
    if not value > 0:
        raise ValidationException(field, f"debe ser mayor a 0 (recibido {value})")
