"""
FeatNet Domain Exceptions.
Excepciones específicas del extractor de características.
"""

from shared.domain.exceptions import (
    BusinessRuleException,
    CorruptDataException,
    DomainException,
    ValidationException,
)


class FeatNetException(DomainException):
    """Excepción base del extractor."""
    pass


class InvalidNetSpec(BusinessRuleException):
    """Lista de capas inconsistente."""

    def __init__(self, details: str):
        super().__init__("featnet_spec", details)


class InvalidWeights(ValidationException):
    """Pesos con forma incorrecta o valores no finitos."""

    def __init__(self, details: str):
        super().__init__("weights", details)


class ShapeMismatch(ValidationException):
    """Entrada, cotangente o dirección con forma incompatible."""

    def __init__(self, what: str, expected, received):
        super().__init__(what, f"forma esperada {expected}, recibida {received}")


class WeightsFormatError(CorruptDataException):
    """Fichero de pesos truncado o con cabecera inválida."""

    def __init__(self, path: str, details: str):
        super().__init__(str(path), details)
