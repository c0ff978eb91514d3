"""
Sweep Command.
Barrido de QP de una imagen: una codificación por QP reutilizando el Jacobiano.
"""

from dataclasses import replace

from apps.evaluation.application.services import SweepService
from apps.evaluation.infrastructure.csv_export import emit_csv
from apps.imaging.infrastructure.pgm import load_image
from apps.rdo.infrastructure.decision_log import write_sweep_decisions
from apps.rdo.management.options import add_rdo_arguments, build_config
from shared.infrastructure.cli import CodecCommand, parse_qps

DEFAULT_QPS = '26,28,30,32,34,36'


class Command(CodecCommand):
    """Comando sweep."""

    help = 'Barrido de QP con RDO; emite una línea por punto y, opcionalmente, CSV y .dat'

    def add_arguments(self, parser):
        add_rdo_arguments(parser)
        parser.add_argument('--qps', default=DEFAULT_QPS, help='QPs separados por comas (default: %(default)s)')
        parser.add_argument('--curve-csv', default=None, help='CSV de la curva; el .dat se escribe al lado')
        parser.add_argument('--label', default=None, help='Etiqueta de la curva (default: la métrica)')
        parser.add_argument('--decisions-csv', default=None, help='Registro CSV de decisiones por QP y bloque')

    def run_command(self, **options):
        qps = parse_qps(options['qps'])
        plane = load_image(options['input'])
        config, net = build_config(options, plane, qps[0] if qps else 0, measure=True)
        service = SweepService(net)
        curve = service.sweep(plane, config, qps, label=options['label'])
        if options['weights']:
            curve = replace(curve, metadata={**curve.metadata, 'weights': options['weights']})
        if options['curve_csv']:
            emit_csv([curve], options['curve_csv'])
        if options['decisions_csv']:
            write_sweep_decisions(options['decisions_csv'], service.decisions)

        for point in curve.points:
            self.emit(
                f"label={curve.label} qp={point.qp} bits={point.bits} bpp={point.bpp:.6f} "
                f"psnr={point.psnr:.4f} idse={point.idse:.9g} featdist={point.feature_distance:.9g} "
                f"flops={point.encode_flops}"
            )
        self.emit(f"seed={options['seed']} generator={curve.metadata['generator']}")
