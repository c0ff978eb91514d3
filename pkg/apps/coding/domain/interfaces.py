"""
Coding Domain Interfaces.
"""

from abc import ABC, abstractmethod
from pathlib import Path

from .entities import Bitstream


class BitstreamRepositoryInterface(ABC):
    """Interface para persistir flujos de bits."""

    @abstractmethod
    def save(self, path: Path, bitstream: Bitstream) -> None:
        pass

    @abstractmethod
    def load(self, path: Path) -> bytes:
        pass
