"""
Sketching Domain Exceptions.
"""

from shared.domain.exceptions import BusinessRuleException, DomainException, ValidationException


class SketchException(DomainException):
    """Excepción base de los sketches."""
    pass


class InvalidSketchSpec(ValidationException):
    """Parámetros del sketch fuera de dominio."""

    def __init__(self, details: str):
        super().__init__("sketch", details)


class SketchLengthMismatch(ValidationException):
    """Vector de longitud distinta a n_f."""

    def __init__(self, expected: int, received: int):
        super().__init__("z", f"longitud esperada {expected}, recibida {received}")


class ChannelLayoutError(BusinessRuleException):
    """n_f no se reparte en canales para el sketch DCT."""

    def __init__(self, n_f: int, feature_shape):
        super().__init__(
            "dct_channels",
            f"n_f={n_f} no corresponde a la forma de características {feature_shape}",
        )
