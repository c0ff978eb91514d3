"""
Jacobian Domain Exceptions.
"""

from shared.domain.exceptions import CorruptDataException, DomainException, ValidationException


class JacobianException(DomainException):
    """Excepción base del Jacobiano proyectado."""
    pass


class GridMismatch(ValidationException):
    """El número de columnas no corresponde a la rejilla de bloques."""

    def __init__(self, expected: int, received: int):
        super().__init__("grid", f"se esperaban {expected} columnas, hay {received}")


class SidecarFormatError(CorruptDataException):
    """Volcado binario del Jacobiano truncado o con cabecera inválida."""

    def __init__(self, path: str, details: str):
        super().__init__(str(path), details)
