"""
Command Line Surface.
Comando base de la CLI del códec y punto de entrada run(argv) -> código de salida.
"""

import logging
import sys
from typing import Any, Dict, List, Sequence

from django.conf import settings
from django.core.management import call_command
from django.core.management.base import BaseCommand, CommandError

from shared.domain.exceptions import DomainException
from shared.infrastructure.exception_handlers import EXIT_OK, EXIT_USAGE, to_command_error

logger = logging.getLogger(__name__)

SUBCOMMANDS: Dict[str, str] = {
    'encode': 'encode',
    'decode': 'decode',
    'sweep': 'sweep',
    'bdrate': 'bdrate',
    'importance': 'importance',
    'gen-weights': 'gen_weights',
    'flops': 'flops',
}


def codec_setting(key: str) -> Any:
    """Valor por defecto operativo del diccionario CODEC de settings."""
    return settings.CODEC[key]


def parse_qps(value: str) -> List[int]:
    """Lista de QPs separada por comas."""
    try:
        return [int(item) for item in value.split(',') if item.strip()]
    except ValueError:
        raise CommandError(f"lista de QPs inválida: {value!r}")


class CodecCommand(BaseCommand):
    """Comando base: traduce excepciones del dominio a códigos de salida."""

    requires_system_checks: List[str] = []

    def handle(self, *args, **options):
        try:
            self.run_command(**options)
        except CommandError:
            raise
        except (DomainException, OSError) as exc:
            raise to_command_error(exc)

    def run_command(self, **options) -> None:
        raise NotImplementedError

    def emit(self, line: str) -> None:
        """Salida de máquina por stdout."""
        self.stdout.write(line)


def run(argv: Sequence[str], stdout=None, stderr=None) -> int:
    """Ejecutar un subcomando y devolver su código de salida.

    0 éxito, 1 error de uso, 2 error de E/S, 3 fallo numérico o de validación.
    """
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    if not argv or argv[0] not in SUBCOMMANDS:
        known = ', '.join(sorted(SUBCOMMANDS))
        stderr.write(f"Subcomando desconocido {argv[0] if argv else ''!r}; disponibles: {known}\n")
        return EXIT_USAGE

    name = SUBCOMMANDS[argv[0]]
    try:
        call_command(name, *argv[1:], stdout=stdout, stderr=stderr)
    except CommandError as exc:
        stderr.write(f"{exc}\n")
        return exc.returncode
    except SystemExit as exc:
        # argparse termina tras --help
        return exc.code if isinstance(exc.code, int) else EXIT_OK
    except (DomainException, OSError) as exc:
        error = to_command_error(exc)
        stderr.write(f"{error}\n")
        return error.returncode
    return EXIT_OK

