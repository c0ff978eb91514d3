"""
Evaluation Domain Exceptions.
Excepciones específicas de barridos, BD-rate y experimentos.
"""

from shared.domain.exceptions import DomainException, NumericalException, ValidationException


class EvaluationException(DomainException):
    """Excepción base de la evaluación."""
    pass


class InvalidSweep(ValidationException):
    """Lista de QPs vacía o no estrictamente creciente."""

    def __init__(self, qps):
        super().__init__("qps", f"deben ser estrictamente crecientes y no vacíos (recibido {list(qps)})")


class InsufficientCurvePoints(ValidationException):
    """Curva con menos puntos de los necesarios para el ajuste cúbico."""

    def __init__(self, label: str, count: int, required: int):
        super().__init__("curve", f"la curva {label!r} tiene {count} puntos, se necesitan {required}")


class NoQualityOverlap(ValidationException):
    """Las curvas no comparten intervalo de calidad."""

    def __init__(self, low: float, high: float):
        super().__init__("quality", f"sin solape de calidad: [{low:.6g}, {high:.6g}]")


class DegenerateCurve(NumericalException):
    """Curva no monótona o con calidades repetidas."""

    def __init__(self, label: str, details: str):
        super().__init__("bd_rate", f"curva {label!r} degenerada: {details}")


class DegenerateCorrelation(NumericalException):
    """Correlación indefinida por varianza nula."""

    def __init__(self, details: str):
        super().__init__("pearson", details)


class InsufficientRegions(ValidationException):
    """Imagen demasiado pequeña para el experimento de agregación."""

    def __init__(self, samples: int, required: int):
        super().__init__("regions", f"{samples} muestras región-QP, se necesitan al menos {required}")


class MismatchedCurves(ValidationException):
    """Curvas sin la misma lista de QPs, que no se pueden agregar."""

    def __init__(self, details: str):
        super().__init__("curves", details)
