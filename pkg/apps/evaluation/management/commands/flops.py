"""
Flops Command.
Coste analítico de la RDO con distancia de características frente a la IDSE.
"""

from apps.evaluation.application.services import flop_estimate, macs_per_pixel
from apps.evaluation.domain.entities import REFERENCE_FLOP_RATIO, REFERENCE_FLOP_SETTING
from apps.featnet.domain.entities import default_spec
from shared.infrastructure.cli import CodecCommand


class Command(CodecCommand):
    """Comando flops."""

    help = 'Estima los FLOPs de FD-RDO e IDSE-RDO y su cociente'

    def add_arguments(self, parser):
        parser.add_argument('--h', type=int, required=True, help='Alto de la imagen')
        parser.add_argument('--w', type=int, required=True, help='Ancho de la imagen')
        parser.add_argument('--hr', type=int, required=True, help='Alto de la región del Jacobiano')
        parser.add_argument('--wr', type=int, required=True, help='Ancho de la región del Jacobiano')
        parser.add_argument('--nr', type=int, required=True, help='Candidatos por bloque')
        parser.add_argument('--ell', type=int, required=True, help='Filas del sketch')
        parser.add_argument(
            '--per-pixel', type=float, default=None,
            help='FLOPs por píxel del extractor (default: MACs por píxel de la red por defecto)',
        )

    def run_command(self, **options):
        per_pixel = options['per_pixel']
        if per_pixel is None:
            per_pixel = macs_per_pixel(default_spec())
        estimate = flop_estimate(
            options['h'], options['w'], options['hr'], options['wr'], options['nr'], options['ell'], per_pixel,
        )
        self.emit(
            f"fd_flops={estimate.fd_flops:.9g} idse_flops={estimate.idse_flops:.9g} "
            f"ratio={estimate.ratio:.4f}"
        )
        setting = tuple(options[key] for key in ('h', 'w', 'hr', 'wr', 'nr', 'ell'))
        if setting == REFERENCE_FLOP_SETTING:
            self.emit(
                f"reference_ratio={REFERENCE_FLOP_RATIO} "
                f"delta={estimate.ratio - REFERENCE_FLOP_RATIO:+.4f}"
            )
