"""
RDO Domain Exceptions.
"""

from shared.domain.exceptions import BusinessRuleException, DomainException, ValidationException


class RDOException(DomainException):
    """Excepción base de la RDO."""
    pass


class InvalidRDOConfig(ValidationException):
    """Parámetro de configuración fuera de dominio."""

    def __init__(self, field: str, details: str):
        super().__init__(field, details)


class MissingJacobian(BusinessRuleException):
    """La métrica pedida necesita el extractor o el Jacobiano proyectado."""

    def __init__(self, details: str):
        super().__init__("rdo_inputs", details)


class DistortionShapeMismatch(ValidationException):
    """Matriz y residuo no encajan (modo o tamaño distinto)."""

    def __init__(self, details: str):
        super().__init__("distortion", details)
