"""
Generate Weights Command.
Genera un fichero de pesos con inicialización He a partir de una semilla.
"""

from apps.featnet.application.services import init_random
from apps.featnet.domain.entities import default_spec
from apps.featnet.infrastructure.weights import save_weights
from shared.infrastructure.cli import CodecCommand, codec_setting


class Command(CodecCommand):
    """Comando gen-weights."""

    help = 'Genera pesos aleatorios reproducibles para el extractor de características'

    def add_arguments(self, parser):
        parser.add_argument('--out', required=True, help='Fichero de pesos de salida')
        parser.add_argument(
            '--seed', type=int, default=codec_setting('SEED'),
            help='Semilla del generador Philox (default: %(default)s)',
        )
        parser.add_argument(
            '--depth', type=int, default=2,
            help='Número de etapas Conv-activación-Pool (default: %(default)s)',
        )
        parser.add_argument(
            '--base-channels', type=int, default=8,
            help='Canales de la primera etapa (default: %(default)s)',
        )
        parser.add_argument(
            '--activation', choices=['relu', 'softplus'], default='relu',
            help='No linealidad (default: %(default)s)',
        )
        parser.add_argument(
            '--beta', type=float, default=10.0,
            help='Beta de Softplus (default: %(default)s)',
        )
        parser.add_argument(
            '--centered', action='store_true',
            help='Núcleos de convolución con media cero',
        )
        parser.add_argument(
            '--bias-shift', type=float, default=0.0,
            help='Desplazamiento sumado a todos los sesgos (default: %(default)s)',
        )

    def run_command(self, **options):
        spec = default_spec(
            depth=options['depth'],
            base_channels=options['base_channels'],
            activation=options['activation'],
            beta=options['beta'],
        )
        net = init_random(spec, options['seed'], centered=options['centered'], bias_shift=options['bias_shift'])
        save_weights(options['out'], net)
        self.emit(
            f"weights={options['out']} layers={len(spec.layers)} "
            f"seed={options['seed']} activation={options['activation']}"
        )
