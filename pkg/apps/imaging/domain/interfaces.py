"""
Imaging Domain Interfaces.
Interfaces del dominio para la persistencia de planos.
"""

from abc import ABC, abstractmethod
from pathlib import Path

import numpy as np

from .entities import ImagePlane


class ImageRepositoryInterface(ABC):
    """Interface para leer y escribir planos de luminancia."""

    @abstractmethod
    def load(self, path: Path) -> ImagePlane:
        """Cargar un plano, rellenado a múltiplos de 16."""
        pass

    @abstractmethod
    def save(self, path: Path, pixels: np.ndarray) -> None:
        """Guardar una matriz de 8 bits."""
        pass
