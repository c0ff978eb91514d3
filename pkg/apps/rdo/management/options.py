"""
RDO Command Options.
Flags compartidos por encode y sweep y construcción de RDOConfig a partir de ellos.
"""

from typing import Optional, Tuple

from apps.featnet.application.services import resolve_net
from apps.featnet.domain.entities import FeatNet
from apps.imaging.domain.entities import ImagePlane
from apps.jacobian.application.services import sketch_spec_for
from apps.jacobian.domain.entities import TauPolicy
from apps.rdo.domain.entities import LambdaNorm, Metric, RDOConfig
from apps.sketching.domain.entities import SketchKind
from shared.infrastructure.cli import codec_setting


def add_rdo_arguments(parser) -> None:
    parser.add_argument('--in', dest='input', required=True, help='Imagen PGM de entrada')
    parser.add_argument(
        '--metric', choices=[metric.value for metric in Metric], default='idse',
        help='Métrica de distorsión de la RDO (default: %(default)s)',
    )
    parser.add_argument('--c', type=float, default=codec_setting('C'), help='Constante de λ (default: %(default)s)')
    parser.add_argument('--tau', type=float, default=None, help='τ explícito; anula --tau-policy')
    parser.add_argument(
        '--tau-policy', choices=[policy.value for policy in TauPolicy], default=codec_setting('TAU_POLICY'),
        help='Regla para τ a partir de las normas de Frobenius (default: %(default)s)',
    )
    parser.add_argument(
        '--lambda-norm', choices=[norm.value for norm in LambdaNorm], default=codec_setting('LAMBDA_NORM'),
        help='Normalización de λ (default: %(default)s)',
    )
    parser.add_argument(
        '--sketch', choices=[kind.value for kind in SketchKind], default=codec_setting('SKETCH'),
        help='Familia del sketch (default: %(default)s)',
    )
    parser.add_argument('--ell', type=int, default=codec_setting('ELL'), help='Filas del sketch (default: %(default)s)')
    parser.add_argument('--seed', type=int, default=codec_setting('SEED'), help='Semilla (default: %(default)s)')
    parser.add_argument('--weights', default=None, help='Fichero de pesos (default: red por defecto sembrada)')
    parser.add_argument(
        '--fd-blend', type=float, default=codec_setting('FD_BLEND'),
        help='Peso de la SSE en la métrica FD (default: %(default)s)',
    )
    parser.add_argument(
        '--threads', type=int, default=codec_setting('THREADS'),
        help='Hilos para decisiones y pasadas inversas (default: %(default)s)',
    )


def build_config(
    options: dict,
    plane: ImagePlane,
    qp: int,
    measure: bool = False,
) -> Tuple[RDOConfig, Optional[FeatNet]]:
    """RDOConfig y extractor para las opciones dadas.

    SSE no carga red salvo con measure, que además fija el sketch para medir la IDSE.
    """
    metric = Metric(options['metric'])
    net = None
    sketch = None
    if metric is not Metric.SSE or measure:
        net = resolve_net(options['weights'], options['seed'])
    if metric is Metric.IDSE or measure:
        sketch = sketch_spec_for(net, plane, options['sketch'], options['ell'], options['seed'])
    config = RDOConfig(
        metric=metric,
        qp=qp,
        c=options['c'],
        tau_policy=TauPolicy(options['tau_policy']),
        tau=options['tau'],
        lambda_norm=LambdaNorm(options['lambda_norm']),
        sketch=sketch,
        fd_blend=options['fd_blend'],
        threads=options['threads'],
    )
    return config, net
