"""
Importance Command.
Exporta el mapa de importancia por píxel (diagonal de JᵀSᵀSJ) como PGM normalizado.
"""

from apps.featnet.application.services import FeatNetService, resolve_net
from apps.imaging.infrastructure.pgm import PGMImageRepository
from apps.jacobian.application.services import ImportanceService, JacobianService, sketch_spec_for
from apps.jacobian.infrastructure.sidecar import BinarySidecarRepository
from apps.sketching.domain.entities import GENERATOR_NAME, SketchKind
from shared.infrastructure.cli import CodecCommand, codec_setting


class Command(CodecCommand):
    """Comando importance."""

    help = 'Calcula el mapa de importancia del Jacobiano proyectado de una imagen'

    def add_arguments(self, parser):
        parser.add_argument('--in', dest='input', required=True, help='Imagen PGM de entrada')
        parser.add_argument('--out', required=True, help='PGM del mapa de importancia')
        parser.add_argument('--weights', default=None, help='Fichero de pesos (default: red por defecto sembrada)')
        parser.add_argument(
            '--sketch', choices=[kind.value for kind in SketchKind], default=codec_setting('SKETCH'),
            help='Familia del sketch (default: %(default)s)',
        )
        parser.add_argument('--ell', type=int, default=codec_setting('ELL'), help='Filas del sketch (default: %(default)s)')
        parser.add_argument('--seed', type=int, default=codec_setting('SEED'), help='Semilla (default: %(default)s)')
        parser.add_argument(
            '--threads', type=int, default=codec_setting('THREADS'),
            help='Hilos para las pasadas inversas (default: %(default)s)',
        )
        parser.add_argument(
            '--localized-first', action='store_true',
            help='Calcular el Jacobiano por regiones de 128x128 independientes',
        )
        parser.add_argument('--sidecar', default=None, help='Volcado binario opcional de Bpix/Btr')

    def run_command(self, **options):
        net = resolve_net(options['weights'], options['seed'])
        service = ImportanceService(
            jacobian_service=JacobianService(FeatNetService(net), threads=options['threads']),
            image_repository=PGMImageRepository(),
            sidecar_repository=BinarySidecarRepository(),
        )
        plane = service.load(options['input'])
        spec = sketch_spec_for(net, plane, options['sketch'], options['ell'], options['seed'])
        values = service.export(
            plane, spec, options['out'],
            localized_first=options['localized_first'], sidecar=options['sidecar'],
        )
        self.emit(
            f"importance={options['out']} width={plane.orig_width} height={plane.orig_height} "
            f"sketch={spec.kind.value} ell={spec.ell} seed={spec.seed} generator={GENERATOR_NAME} "
            f"peak={float(values.max()):.9g}"
        )
