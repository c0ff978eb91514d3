"""
BD-Rate Command.
Diferencia Bjøntegaard de tasa entre dos curvas guardadas por sweep.
"""

from apps.evaluation.application.bdrate import bd_rate
from apps.evaluation.domain.entities import QualityAxis
from apps.evaluation.infrastructure.csv_export import read_curves
from shared.domain.exceptions import NotFoundException
from shared.infrastructure.cli import CodecCommand


def select_curve(path: str, label):
    curves = read_curves(path)
    for curve in curves:
        if label is None or curve.label == label:
            return curve
    raise NotFoundException('Curva', f"{path}:{label or '*'}")


class Command(CodecCommand):
    """Comando bdrate."""

    help = 'BD-rate de la curva de prueba frente a la de referencia'

    def add_arguments(self, parser):
        parser.add_argument('--anchor', required=True, help='CSV de la curva de referencia')
        parser.add_argument('--test', required=True, help='CSV de la curva evaluada')
        parser.add_argument(
            '--axis', choices=[axis.value for axis in QualityAxis], default=QualityAxis.PSNR.value,
            help='Eje de calidad (default: %(default)s)',
        )
        parser.add_argument('--anchor-label', default=None, help='Curva del CSV de referencia (default: la primera)')
        parser.add_argument('--test-label', default=None, help='Curva del CSV evaluado (default: la primera)')

    def run_command(self, **options):
        anchor = select_curve(options['anchor'], options['anchor_label'])
        test = select_curve(options['test'], options['test_label'])
        axis = QualityAxis(options['axis'])
        value = bd_rate(anchor, test, axis)
        self.emit(f"bdrate={value:.4f} axis={axis.value} anchor={anchor.label} test={test.label}")
