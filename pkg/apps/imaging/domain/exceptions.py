"""
Imaging Domain Exceptions.
Excepciones específicas del dominio de imágenes.
"""

from shared.domain.exceptions import (
    BusinessRuleException,
    CorruptDataException,
    DomainException,
    ValidationException,
)


class ImagingException(DomainException):
    """Excepción base para el dominio de imágenes."""
    pass


class InvalidImageFormat(CorruptDataException):
    """Fichero PGM ilegible o con cabecera inválida."""

    def __init__(self, path: str, details: str):
        super().__init__(str(path), details)


class InvalidPlaneGeometry(BusinessRuleException):
    """Geometría de plano que viola los invariantes de relleno."""

    def __init__(self, details: str):
        super().__init__("plane_geometry", details)


class BlockIndexOutOfRange(ValidationException):
    """Índice de macrobloque fuera de rango."""

    def __init__(self, index: int, n_b: int):
        super().__init__("block_index", f"{index} fuera de [0, {n_b})")


class DimensionMismatch(ValidationException):
    """Planos con dimensiones incompatibles."""

    def __init__(self, first: tuple, second: tuple):
        super().__init__("dimensions", f"{first} != {second}")
