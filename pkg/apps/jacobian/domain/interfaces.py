"""
Jacobian Domain Interfaces.
"""

from abc import ABC, abstractmethod
from pathlib import Path

from .entities import SketchedJacobian


class SidecarRepositoryInterface(ABC):
    """Interface para volcar y leer matrices Bpix/Btr."""

    @abstractmethod
    def save(self, path: Path, sj: SketchedJacobian) -> None:
        pass

    @abstractmethod
    def load(self, path: Path) -> SketchedJacobian:
        pass
