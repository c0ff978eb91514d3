"""
Coding Domain Exceptions.
Excepciones específicas del códec.
"""

from shared.domain.exceptions import CorruptDataException, DomainException, NumericalException, ValidationException


class CodingException(DomainException):
    """Excepción base del códec."""
    pass


class InvalidQP(ValidationException):
    """QP fuera de [0, 51]."""

    def __init__(self, qp):
        super().__init__("qp", f"debe estar entre 0 y 51 (recibido {qp})")


class QuantizationOverflow(NumericalException):
    """Nivel cuantificado con magnitud superior a 2^23."""

    def __init__(self, magnitude: float):
        super().__init__("quantize", f"nivel de magnitud {magnitude:.0f} supera 2^23")


class MalformedBitstream(CorruptDataException):
    """Flujo de bits truncado o inconsistente."""

    def __init__(self, details: str, resource: str = "bitstream"):
        super().__init__(resource, details)


class UnsupportedBitstream(CorruptDataException):
    """Número mágico o versión no reconocidos."""

    def __init__(self, details: str, resource: str = "bitstream"):
        super().__init__(resource, details)


class ContainerLimitExceeded(ValidationException):
    """Campo de cabecera que no cabe en su ancho del contenedor."""

    def __init__(self, field: str, value: int, limit: int):
        super().__init__(field, f"{value} supera el máximo del contenedor ({limit})")
