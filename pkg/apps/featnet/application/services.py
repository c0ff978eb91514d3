"""
FeatNet Application Services.
Evaluación del extractor f(·), productos vector-Jacobiano y Jacobiano-vector,
oráculo de diferencias finitas e inicialización aleatoria reproducible.
"""

import logging
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import numpy as np

from apps.featnet.domain.entities import FeatNet, FeatNetSpec, FeatNetWeights, default_spec
from apps.featnet.domain.exceptions import ShapeMismatch
from apps.featnet.domain.interfaces import WeightsRepositoryInterface
from apps.featnet.domain.layers import LayerParams
from apps.featnet.infrastructure.weights import BinaryWeightsRepository
from shared.domain.entities import require_positive
from shared.domain.exceptions import ValidationException

logger = logging.getLogger(__name__)

BIAS_STD = 0.01
DEFAULT_BETA = 20.0
DEFAULT_BIAS_SHIFT = -0.1


@dataclass
class PassCounters:
    """Contadores instrumentados de pasadas y multiplicaciones-acumulaciones."""
    forward_passes: int = 0
    backward_passes: int = 0
    tangent_passes: int = 0
    macs: int = 0
    backward_macs: int = 0
    per_layer_macs: Dict[int, int] = field(default_factory=dict)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    def record(self, kind: str, count: int, layer_macs: List[int]) -> None:
        with self._lock:
            total = count * sum(layer_macs)
            if kind == 'forward':
                self.forward_passes += count
                self.macs += total
                for index, value in enumerate(layer_macs):
                    self.per_layer_macs[index] = self.per_layer_macs.get(index, 0) + count * value
            elif kind == 'backward':
                self.backward_passes += count
                self.backward_macs += total
            else:
                self.tangent_passes += count

    def reset(self) -> None:
        with self._lock:
            self.forward_passes = 0
            self.backward_passes = 0
            self.tangent_passes = 0
            self.macs = 0
            self.backward_macs = 0
            self.per_layer_macs = {}


@dataclass
class ForwardTape:
    """Entradas de cada capa guardadas por la pasada directa (lote 1)."""
    height: int
    width: int
    inputs: List[np.ndarray]
    output: np.ndarray

    @property
    def features(self) -> np.ndarray:
        return self.output.reshape(-1)


class FeatNetService:
    """Servicio de evaluación y diferenciación del extractor."""

    def __init__(self, net: FeatNet, counters: Optional[PassCounters] = None):
        self.net = net
        self.spec = net.spec
        self.counters = counters or PassCounters()
        self._layers = net.layer_params()

    # ------------------------------------------------------------------ #
    # Validación de formas
    # ------------------------------------------------------------------ #

    def _check_image(self, x: np.ndarray) -> Tuple[int, int]:
        if x.ndim != 2:
            raise ShapeMismatch('x', '(alto, ancho)', x.shape)
        height, width = x.shape
        factor = self.spec.divisibility
        if height % factor or width % factor:
            raise ShapeMismatch('x', f"dimensiones múltiplo de {factor}", x.shape)
        return height, width

    def output_dim(self, height: int, width: int) -> int:
        return self.spec.output_dim(height, width)

    def layer_macs(self, height: int, width: int) -> List[int]:
        """MACs de cada capa para una entrada de alto x ancho."""
        shapes = self.spec.shapes(height, width)
        return [layer.macs(shape) for layer, shape in zip(self.spec.layers, shapes)]

    def _normalize(self, x: np.ndarray) -> np.ndarray:
        norm = self.spec.input_norm
        return np.asarray(x, dtype=np.float64) * norm.scale + norm.offset

    # ------------------------------------------------------------------ #
    # Evaluación directa
    # ------------------------------------------------------------------ #

    def forward_tape(self, x: np.ndarray) -> ForwardTape:
        """Pasada directa guardando la entrada de cada capa."""
        x = np.asarray(x, dtype=np.float64)
        height, width = self._check_image(x)
        activation = self._normalize(x)[None, None, :, :]
        inputs = []
        for layer, params in self._layers:
            inputs.append(activation)
            activation = layer.forward(activation, params)
        self.counters.record('forward', 1, self.layer_macs(height, width))
        return ForwardTape(height=height, width=width, inputs=inputs, output=activation)

    def forward(self, x: np.ndarray) -> np.ndarray:
        """f(x) para una imagen (alto, ancho) o una pila (N, alto, ancho).

        Las características se aplanan canal-mayor: índice c·h'·w' + fila·w' + columna.
        """
        x = np.asarray(x, dtype=np.float64)
        if x.ndim == 2:
            return self.forward_tape(x).features
        if x.ndim != 3:
            raise ShapeMismatch('x', '(alto, ancho) o (N, alto, ancho)', x.shape)
        count = x.shape[0]
        height, width = self._check_image(x[0])
        activation = self._normalize(x)[:, None, :, :]
        for layer, params in self._layers:
            activation = layer.forward(activation, params)
        self.counters.record('forward', count, self.layer_macs(height, width))
        return activation.reshape(count, -1)

    def forward_blocks(self, blocks: np.ndarray) -> np.ndarray:
        """f(·) de una pila (N, h, w) de bloques de cualquier tamaño.

        Cada bloque se rellena replicando el borde hasta un múltiplo de la
        divisibilidad del extractor; el relleno es menor que un paso de pooling,
        así que toda celda de salida cubre parte del bloque. Devuelve (N, n_f).
        """
        blocks = np.asarray(blocks, dtype=np.float64)
        if blocks.ndim != 3:
            raise ShapeMismatch('bloques', '(N, alto, ancho)', blocks.shape)
        _, height, width = blocks.shape
        factor = self.spec.divisibility
        pad_h = -height % factor
        pad_w = -width % factor
        if pad_h or pad_w:
            blocks = np.pad(blocks, ((0, 0), (0, pad_h), (0, pad_w)), mode='edge')
        return self.forward(blocks)

    # ------------------------------------------------------------------ #
    # Diferenciación
    # ------------------------------------------------------------------ #

    def vjp(
        self,
        x: np.ndarray,
        cotangents: np.ndarray,
        tape: Optional[ForwardTape] = None,
    ) -> np.ndarray:
        """vᵀ·J_f(x) en unidades de píxel, exacto en modo inverso.

        Acepta un cotangente (n_f,) o una pila (k, n_f) que comparte la misma
        cinta; cada fila cuenta como una pasada inversa.
        """
        if tape is None:
            tape = self.forward_tape(x)
        cotangents = np.asarray(cotangents, dtype=np.float64)
        single = cotangents.ndim == 1
        stack = cotangents[None, :] if single else cotangents
        n_f = tape.output.size
        if stack.ndim != 2 or stack.shape[1] != n_f:
            raise ShapeMismatch('cotangente', f"(k, {n_f})", cotangents.shape)

        count = stack.shape[0]
        grad = stack.reshape((count,) + tape.output.shape[1:])
        for (layer, params), layer_input in zip(reversed(self._layers), reversed(tape.inputs)):
            grad = layer.vjp(layer_input, grad, params)
        self.counters.record('backward', count, self.layer_macs(tape.height, tape.width))

        result = grad.reshape(count, -1) * self.spec.input_norm.scale
        return result[0] if single else result

    def jvp(
        self,
        x: np.ndarray,
        directions: np.ndarray,
        tape: Optional[ForwardTape] = None,
    ) -> np.ndarray:
        """J_f(x)·d en modo directo para una dirección (n_p,) o una pila (k, n_p)."""
        if tape is None:
            tape = self.forward_tape(x)
        directions = np.asarray(directions, dtype=np.float64)
        single = directions.ndim == 1
        stack = directions[None, :] if single else directions
        n_p = tape.height * tape.width
        if stack.ndim != 2 or stack.shape[1] != n_p:
            raise ShapeMismatch('dirección', f"(k, {n_p})", directions.shape)

        count = stack.shape[0]
        tangent = stack.reshape(count, 1, tape.height, tape.width) * self.spec.input_norm.scale
        for (layer, params), layer_input in zip(self._layers, tape.inputs):
            tangent = layer.jvp(layer_input, tangent, params)
        self.counters.record('tangent', count, [])

        result = tangent.reshape(count, -1)
        return result[0] if single else result

    def finite_diff_jvp(self, x: np.ndarray, direction: np.ndarray, h: float) -> np.ndarray:
        """(f(x + h·d) − f(x − h·d)) / (2h), con x y h en unidades de píxel."""
        require_positive('h', h)
        x = np.asarray(x, dtype=np.float64)
        direction = np.asarray(direction, dtype=np.float64)
        if direction.size != x.size:
            raise ShapeMismatch('dirección', (x.size,), direction.shape)
        step = h * direction.reshape(x.shape)
        pair = self.forward(np.stack([x + step, x - step]))
        return (pair[0] - pair[1]) / (2.0 * h)


def forward(net: FeatNet, x: np.ndarray) -> np.ndarray:
    return FeatNetService(net).forward(x)


def vjp(net: FeatNet, x: np.ndarray, cotangents: np.ndarray) -> np.ndarray:
    return FeatNetService(net).vjp(x, cotangents)


def jvp(net: FeatNet, x: np.ndarray, directions: np.ndarray) -> np.ndarray:
    return FeatNetService(net).jvp(x, directions)


def finite_diff_jvp(net: FeatNet, x: np.ndarray, direction: np.ndarray, h: float) -> np.ndarray:
    return FeatNetService(net).finite_diff_jvp(x, direction, h)


def init_random(spec: FeatNetSpec, seed: int, centered: bool = False, bias_shift: float = 0.0) -> FeatNet:
    """Pesos con escala He (desviación √(2/fan_in)) desde un generador Philox sembrado.

    Con centered=True cada núcleo 3x3 de una convolución tiene media cero, de modo
    que la red responde a la textura y no al brillo medio. bias_shift se suma a
    todos los sesgos.
    """
    if not 0 <= seed < 2 ** 64:
        raise ValidationException('seed', f"debe ser un entero de 64 bits sin signo (recibido {seed})")
    rng = np.random.Generator(np.random.Philox(seed))
    params = []
    for layer in spec.weighted_layers:
        kernel_shape, bias_shape = layer.param_shapes()
        std = np.sqrt(2.0 / layer.fan_in())
        kernel = rng.normal(0.0, std, size=kernel_shape)
        if centered and kernel.ndim == 4:
            kernel -= kernel.mean(axis=(2, 3), keepdims=True)
        bias = rng.normal(0.0, BIAS_STD, size=bias_shape) + bias_shift
        params.append(LayerParams(kernel=kernel.astype(np.float32), bias=bias.astype(np.float32)))
    logger.debug(f"Pesos inicializados con semilla {seed}: {len(params)} capas con parámetros")
    return FeatNet(spec=spec, weights=FeatNetWeights(params=tuple(params)))


def default_net(seed: int, depth: int = 2, base_channels: int = 8) -> FeatNet:
    """Extractor por defecto: núcleos centrados, Softplus(β=20) y sesgo desplazado."""
    spec = default_spec(depth, base_channels, activation='softplus', beta=DEFAULT_BETA)
    return init_random(spec, seed, centered=True, bias_shift=DEFAULT_BIAS_SHIFT)


def zero_weights(spec: FeatNetSpec) -> FeatNet:
    """Red con todos los pesos y sesgos a cero."""
    params = []
    for layer in spec.weighted_layers:
        kernel_shape, bias_shape = layer.param_shapes()
        params.append(LayerParams(
            kernel=np.zeros(kernel_shape, dtype=np.float32),
            bias=np.zeros(bias_shape, dtype=np.float32),
        ))
    return FeatNet(spec=spec, weights=FeatNetWeights(params=tuple(params)))


def resolve_net(
    weights_path: Optional[str],
    seed: int,
    repository: Optional[WeightsRepositoryInterface] = None,
) -> FeatNet:
    """Pesos del fichero indicado o, sin fichero, el extractor por defecto con la semilla."""
    if weights_path:
        return (repository or BinaryWeightsRepository()).load(Path(weights_path))
    logger.info(f"Sin fichero de pesos: extractor por defecto con semilla {seed}")
    return default_net(seed)
