"""
Exception handlers: mapeo de excepciones a códigos de salida.
"""

from .custom_exception_handler import (
    EXIT_IO,
    EXIT_NUMERIC,
    EXIT_OK,
    EXIT_USAGE,
    get_error_code,
    get_exit_code,
    to_command_error,
)

__all__ = [
    'EXIT_IO',
    'EXIT_NUMERIC',
    'EXIT_OK',
    'EXIT_USAGE',
    'get_error_code',
    'get_exit_code',
    'to_command_error',
]
