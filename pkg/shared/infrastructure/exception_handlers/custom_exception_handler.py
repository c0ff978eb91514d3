"""
Custom Exception Handlers.
Traducción de excepciones del dominio a códigos de salida de la CLI.
"""

import logging

from django.core.management.base import CommandError

from shared.domain.exceptions import CorruptDataException, NotFoundException

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_NUMERIC = 3


def get_exit_code(exc: BaseException) -> int:
    """Código de salida según el tipo de excepción."""
    if isinstance(exc, CommandError):
        return getattr(exc, 'returncode', EXIT_USAGE)
    if isinstance(exc, (NotFoundException, CorruptDataException, OSError)):
        return EXIT_IO
    # ValidationException, BusinessRuleException, NumericalException y el resto
    return EXIT_NUMERIC


def get_error_code(exc: BaseException) -> str:
    """Código de error legible para los diagnósticos."""
    error_codes = {
        EXIT_USAGE: 'usage_error',
        EXIT_IO: 'io_error',
        EXIT_NUMERIC: 'validation_error',
    }
    return getattr(exc, 'code', None) or error_codes[get_exit_code(exc)]


def to_command_error(exc: BaseException) -> CommandError:
    """Convertir una excepción en CommandError con el código de salida adecuado."""
    if isinstance(exc, CommandError):
        return exc
    returncode = get_exit_code(exc)
    logger.error(f"[{get_error_code(exc)}] {type(exc).__name__}: {exc}")
    return CommandError(str(exc), returncode=returncode)
