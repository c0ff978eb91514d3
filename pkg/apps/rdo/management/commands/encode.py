"""
Encode Command.
Codifica una imagen PGM con RDO bajo la métrica elegida y escribe el flujo FPRC.
"""

from apps.coding.infrastructure.bitstream import FileBitstreamRepository
from apps.imaging.infrastructure.pgm import PGMImageRepository
from apps.rdo.application.services import EncodeService
from apps.rdo.infrastructure.decision_log import write_decisions
from apps.rdo.management.options import add_rdo_arguments, build_config
from apps.sketching.domain.entities import GENERATOR_NAME
from shared.infrastructure.cli import CodecCommand, codec_setting


class Command(CodecCommand):
    """Comando encode."""

    help = 'Codifica una imagen con RDO (SSE, IDSE o FD) a un flujo de bits'

    def add_arguments(self, parser):
        add_rdo_arguments(parser)
        parser.add_argument('--out', required=True, help='Flujo de bits de salida')
        parser.add_argument('--qp', type=int, default=codec_setting('QP'), help='Parámetro de cuantificación (default: %(default)s)')
        parser.add_argument('--decisions-csv', default=None, help='Registro CSV de decisiones por bloque')

    def run_command(self, **options):
        service = EncodeService(
            image_repository=PGMImageRepository(),
            bitstream_repository=FileBitstreamRepository(),
        )
        plane = service.load(options['input'])
        config, net = build_config(options, plane, options['qp'])
        result = service.encode_to(plane, config, options['out'], net=net)
        if options['decisions_csv']:
            write_decisions(options['decisions_csv'], result.decisions)

        idse = f"{result.total_idse:.9g}" if result.total_idse is not None else 'na'
        self.emit(
            f"encoded={options['out']} metric={config.metric.value} qp={config.qp} "
            f"bits={result.total_bits} bpp={result.total_bits / (plane.orig_width * plane.orig_height):.6f} "
            f"psnr={result.psnr:.4f} idse={idse} t4={result.t4_count} "
            f"lambda={result.lambda_effective:.9g} seed={options['seed']} generator={GENERATOR_NAME}"
        )
