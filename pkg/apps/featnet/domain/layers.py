"""
FeatNet Layers.
Capas del extractor: evaluación directa, productos vector-Jacobiano (modo inverso)
y productos Jacobiano-vector (modo directo), exactos y por lotes.

Todas las activaciones tienen forma (N, C, H, W) en doble precisión. En vjp/jvp
la entrada guardada en la cinta tiene lote 1 y se difunde sobre los k vectores.
"""

from dataclasses import dataclass
from enum import Enum
from typing import ClassVar, Tuple, Union

import numpy as np
from scipy.special import expit

KERNEL_SIZE = 3


class LayerKind(Enum):
    """Tipos de capa soportados."""
    CONV2D = 1
    RELU = 2
    SOFTPLUS = 3
    AVGPOOL = 4
    DENSE = 5


@dataclass(frozen=True, eq=False)
class LayerParams:
    """Núcleo y sesgo de una capa con pesos (float32 en almacenamiento)."""
    kernel: np.ndarray
    bias: np.ndarray


Shape = Tuple[int, int, int]


def conv2d_same(x: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    """Correlación 3x3, paso 1, relleno de ceros 1: (N, C, H, W) x (O, C, 3, 3) -> (N, O, H, W)."""
    _, _, height, width = x.shape
    padded = np.pad(x, ((0, 0), (0, 0), (1, 1), (1, 1)))
    out = None
    for i in range(KERNEL_SIZE):
        for j in range(KERNEL_SIZE):
            tap = np.einsum(
                'oc,nchw->nohw',
                kernel[:, :, i, j],
                padded[:, :, i:i + height, j:j + width],
                optimize=True,
            )
            out = tap if out is None else out + tap
    return out


def transposed_kernel(kernel: np.ndarray) -> np.ndarray:
    """Núcleo adjunto: canales intercambiados y taps invertidos."""
    return np.ascontiguousarray(kernel[:, :, ::-1, ::-1].transpose(1, 0, 2, 3))


@dataclass(frozen=True)
class Conv2D:
    """Convolución 3x3, paso 1, relleno de ceros 1."""
    in_ch: int
    out_ch: int
    kind: ClassVar[LayerKind] = LayerKind.CONV2D
    has_params: ClassVar[bool] = True
    is_nonlinear: ClassVar[bool] = False

    def param_shapes(self) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        return (self.out_ch, self.in_ch, KERNEL_SIZE, KERNEL_SIZE), (self.out_ch,)

    def fan_in(self) -> int:
        return self.in_ch * KERNEL_SIZE * KERNEL_SIZE

    def output_shape(self, shape: Shape) -> Shape:
        channels, height, width = shape
        if channels != self.in_ch:
            raise ValueError(f"Conv2D espera {self.in_ch} canales, recibe {channels}")
        return self.out_ch, height, width

    def macs(self, shape: Shape) -> int:
        _, height, width = shape
        return self.out_ch * self.in_ch * KERNEL_SIZE * KERNEL_SIZE * height * width

    def forward(self, x, params: LayerParams):
        kernel = params.kernel.astype(np.float64)
        bias = params.bias.astype(np.float64)
        return conv2d_same(x, kernel) + bias[None, :, None, None]

    def vjp(self, x, g, params: LayerParams):
        return conv2d_same(g, transposed_kernel(params.kernel.astype(np.float64)))

    def jvp(self, x, d, params: LayerParams):
        return conv2d_same(d, params.kernel.astype(np.float64))


@dataclass(frozen=True)
class ReLU:
    """Rectificador; derivada en 0 definida como 0."""
    kind: ClassVar[LayerKind] = LayerKind.RELU
    has_params: ClassVar[bool] = False
    is_nonlinear: ClassVar[bool] = True

    def output_shape(self, shape: Shape) -> Shape:
        return shape

    def macs(self, shape: Shape) -> int:
        return 0

    def forward(self, x, params=None):
        return np.maximum(x, 0.0)

    def vjp(self, x, g, params=None):
        return g * (x > 0.0)

    def jvp(self, x, d, params=None):
        return d * (x > 0.0)


@dataclass(frozen=True)
class Softplus:
    """Softplus suave (1/beta)·log(1 + exp(beta·x))."""
    beta: float = 10.0
    kind: ClassVar[LayerKind] = LayerKind.SOFTPLUS
    has_params: ClassVar[bool] = False
    is_nonlinear: ClassVar[bool] = True

    def __post_init__(self):
        if not self.beta > 0:
            raise ValueError("beta debe ser mayor a 0")

    def output_shape(self, shape: Shape) -> Shape:
        return shape

    def macs(self, shape: Shape) -> int:
        return 0

    def forward(self, x, params=None):
        return np.logaddexp(0.0, self.beta * x) / self.beta

    def vjp(self, x, g, params=None):
        return g * expit(self.beta * x)

    def jvp(self, x, d, params=None):
        return d * expit(self.beta * x)


@dataclass(frozen=True)
class AvgPool:
    """Promedio 2x2 con paso 2."""
    size: int = 2
    kind: ClassVar[LayerKind] = LayerKind.AVGPOOL
    has_params: ClassVar[bool] = False
    is_nonlinear: ClassVar[bool] = False

    def output_shape(self, shape: Shape) -> Shape:
        channels, height, width = shape
        if height % self.size or width % self.size:
            raise ValueError(f"AvgPool requiere dimensiones múltiplo de {self.size}")
        return channels, height // self.size, width // self.size

    def macs(self, shape: Shape) -> int:
        return 0

    def forward(self, x, params=None):
        n, c, h, w = x.shape
        s = self.size
        return x.reshape(n, c, h // s, s, w // s, s).mean(axis=(3, 5))

    def vjp(self, x, g, params=None):
        s = self.size
        return np.repeat(np.repeat(g, s, axis=2), s, axis=3) / (s * s)

    def jvp(self, x, d, params=None):
        return self.forward(d)


@dataclass(frozen=True)
class Dense:
    """Capa totalmente conectada sobre la activación aplanada (configuraciones de prueba)."""
    in_features: int
    out_features: int
    kind: ClassVar[LayerKind] = LayerKind.DENSE
    has_params: ClassVar[bool] = True
    is_nonlinear: ClassVar[bool] = False

    def param_shapes(self) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        return (self.out_features, self.in_features), (self.out_features,)

    def fan_in(self) -> int:
        return self.in_features

    def output_shape(self, shape: Shape) -> Shape:
        channels, height, width = shape
        if channels * height * width != self.in_features:
            raise ValueError(
                f"Dense espera {self.in_features} entradas, recibe {channels * height * width}"
            )
        return self.out_features, 1, 1

    def macs(self, shape: Shape) -> int:
        return self.out_features * self.in_features

    def forward(self, x, params: LayerParams):
        n = x.shape[0]
        out = x.reshape(n, -1) @ params.kernel.astype(np.float64).T + params.bias.astype(np.float64)
        return out.reshape(n, self.out_features, 1, 1)

    def vjp(self, x, g, params: LayerParams):
        k = g.shape[0]
        grad = g.reshape(k, -1) @ params.kernel.astype(np.float64)
        return grad.reshape((k,) + x.shape[1:])

    def jvp(self, x, d, params: LayerParams):
        k = d.shape[0]
        out = d.reshape(k, -1) @ params.kernel.astype(np.float64).T
        return out.reshape(k, self.out_features, 1, 1)


Layer = Union[Conv2D, ReLU, Softplus, AvgPool, Dense]
