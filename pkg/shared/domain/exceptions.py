"""
Shared Domain Exceptions.
Jerarquía base de errores del códec. Cada clase lleva un código legible que
la CLI informa junto al mensaje; el código de salida lo decide
shared.infrastructure.exception_handlers.
"""


class DomainException(Exception):
    """Excepción base del dominio."""

    default_code = 'domain_error'

    def __init__(self, message: str, code: str = None):
        self.message = message
        self.code = code or self.default_code
        super().__init__(message)


class ValidationException(DomainException):
    """Parámetro o dato de entrada fuera de su dominio."""

    default_code = 'validation_error'

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"Error de validación en {field}: {message}")


class BusinessRuleException(DomainException):
    """Combinación de parámetros válida por separado pero no admitida."""

    default_code = 'rule_violation'

    def __init__(self, rule: str, message: str):
        self.rule = rule
        super().__init__(f"Regla violada ({rule}): {message}")


class NotFoundException(DomainException):
    """Fichero o recurso nombrado que no existe."""

    default_code = 'not_found'

    def __init__(self, entity_type: str, identifier: str):
        self.entity_type = entity_type
        self.identifier = identifier
        super().__init__(f"{entity_type} no encontrado: {identifier}")


class CorruptDataException(DomainException):
    """Datos ilegibles o mal formados (ficheros, flujos de bits)."""

    default_code = 'corrupt_data'

    def __init__(self, resource: str, message: str):
        self.resource = resource
        super().__init__(f"Datos corruptos en {resource}: {message}")


class NumericalException(DomainException):
    """Fallo numérico: problema degenerado o mal condicionado."""

    default_code = 'numerical_error'

    def __init__(self, operation: str, message: str):
        self.operation = operation
        super().__init__(f"Fallo numérico en {operation}: {message}")
