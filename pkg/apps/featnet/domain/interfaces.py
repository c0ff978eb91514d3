"""
FeatNet Domain Interfaces.
Interfaces del dominio para la persistencia de pesos.
"""

from abc import ABC, abstractmethod
from pathlib import Path
from typing import Optional

from .entities import FeatNet, FeatNetSpec


class WeightsRepositoryInterface(ABC):
    """Interface para leer y escribir redes (especificación + pesos)."""

    @abstractmethod
    def load(self, path: Path, spec: Optional[FeatNetSpec] = None) -> FeatNet:
        """Cargar una red; si se declara spec, el fichero debe coincidir."""
        pass

    @abstractmethod
    def save(self, path: Path, net: FeatNet) -> None:
        """Guardar una red de forma bit-exacta."""
        pass
