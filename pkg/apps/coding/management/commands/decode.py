"""
Decode Command.
Decodifica un flujo FPRC a PGM; no necesita pesos ni sketch.
"""

from apps.coding.application.services import DecodeService
from apps.coding.infrastructure.bitstream import FileBitstreamRepository
from apps.imaging.infrastructure.pgm import PGMImageRepository
from shared.infrastructure.cli import CodecCommand


class Command(CodecCommand):
    """Comando decode."""

    help = 'Decodifica un flujo de bits a una imagen PGM'

    def add_arguments(self, parser):
        parser.add_argument('--in', dest='input', required=True, help='Flujo de bits de entrada')
        parser.add_argument('--out', required=True, help='PGM reconstruido de salida')

    def run_command(self, **options):
        service = DecodeService(
            bitstream_repository=FileBitstreamRepository(),
            image_repository=PGMImageRepository(),
        )
        decoded, bits = service.decode_file(options['input'], options['out'])
        header = decoded.header
        self.emit(
            f"decoded={options['out']} width={header.orig_width} height={header.orig_height} "
            f"qp={header.qp} bits={bits}"
        )
