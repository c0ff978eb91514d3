"""
FeatNet Domain Models.
Especificación, pesos y agregado del extractor de características f(·).
"""

from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from .exceptions import InvalidNetSpec, InvalidWeights
from .layers import AvgPool, Conv2D, Dense, Layer, LayerParams, ReLU, Softplus


@dataclass(frozen=True)
class InputNorm:
    """Normalización de entrada x·scale + offset - Value Object."""
    scale: float = 1.0 / 255.0
    offset: float = 0.0


@dataclass(frozen=True)
class FeatNetSpec:
    """Lista ordenada de capas del extractor."""
    layers: Tuple[Layer, ...]
    input_norm: InputNorm = InputNorm()

    def __post_init__(self):
        """Validar que los canales encadenen capa a capa."""
        if not self.layers:
            raise InvalidNetSpec("la red no tiene capas")
        channels = 1
        for index, layer in enumerate(self.layers):
            if isinstance(layer, Conv2D):
                if layer.in_ch != channels:
                    raise InvalidNetSpec(
                        f"capa {index}: Conv2D espera {layer.in_ch} canales, llegan {channels}"
                    )
                if layer.out_ch <= 0:
                    raise InvalidNetSpec(f"capa {index}: out_ch debe ser positivo")
                channels = layer.out_ch
            elif isinstance(layer, Dense):
                if layer.in_features <= 0 or layer.out_features <= 0:
                    raise InvalidNetSpec(f"capa {index}: dimensiones Dense inválidas")
                channels = layer.out_features
            elif not isinstance(layer, (ReLU, Softplus, AvgPool)):
                raise InvalidNetSpec(f"capa {index}: tipo desconocido {layer!r}")

    @property
    def has_nonlinearity(self) -> bool:
        """Una red sin no linealidades solo se admite en pruebas."""
        return any(layer.is_nonlinear for layer in self.layers)

    @property
    def divisibility(self) -> int:
        """Factor del que deben ser múltiplo alto y ancho de la entrada."""
        factor = 1
        for layer in self.layers:
            if isinstance(layer, AvgPool):
                factor *= layer.size
        return factor

    @property
    def weighted_layers(self) -> List[Layer]:
        return [layer for layer in self.layers if layer.has_params]

    def shapes(self, height: int, width: int) -> List[Tuple[int, int, int]]:
        """Forma (C, H, W) de la entrada de cada capa y de la salida final."""
        shape = (1, height, width)
        shapes = [shape]
        for layer in self.layers:
            try:
                shape = layer.output_shape(shape)
            except ValueError as exc:
                raise InvalidNetSpec(str(exc))
            shapes.append(shape)
        return shapes

    def output_shape(self, height: int, width: int) -> Tuple[int, int, int]:
        return self.shapes(height, width)[-1]

    def output_dim(self, height: int, width: int) -> int:
        """n_f para una entrada de alto x ancho."""
        channels, h, w = self.output_shape(height, width)
        return channels * h * w


@dataclass(frozen=True, eq=False)
class FeatNetWeights:
    """Pesos float32 de cada capa con parámetros, en orden."""
    params: Tuple[LayerParams, ...]

    def validate_against(self, spec: FeatNetSpec) -> None:
        """Comprobar formas exactas y valores finitos."""
        weighted = spec.weighted_layers
        if len(weighted) != len(self.params):
            raise InvalidWeights(
                f"{len(self.params)} bloques de pesos para {len(weighted)} capas con parámetros"
            )
        for index, (layer, params) in enumerate(zip(weighted, self.params)):
            kernel_shape, bias_shape = layer.param_shapes()
            if params.kernel.shape != kernel_shape or params.bias.shape != bias_shape:
                raise InvalidWeights(
                    f"capa con pesos {index}: formas {params.kernel.shape}/{params.bias.shape}, "
                    f"esperadas {kernel_shape}/{bias_shape}"
                )
            if params.kernel.dtype != np.float32 or params.bias.dtype != np.float32:
                raise InvalidWeights(f"capa con pesos {index}: se esperaba float32")
            if not (np.all(np.isfinite(params.kernel)) and np.all(np.isfinite(params.bias))):
                raise InvalidWeights(f"capa con pesos {index}: valores no finitos")

    def bitwise_equal(self, other: 'FeatNetWeights') -> bool:
        if len(self.params) != len(other.params):
            return False
        return all(
            a.kernel.tobytes() == b.kernel.tobytes() and a.bias.tobytes() == b.bias.tobytes()
            for a, b in zip(self.params, other.params)
        )


@dataclass(frozen=True, eq=False)
class FeatNet:
    """Agregado: especificación + pesos validados."""
    spec: FeatNetSpec
    weights: FeatNetWeights

    def __post_init__(self):
        self.weights.validate_against(self.spec)

    def layer_params(self):
        """Pares (capa, parámetros o None) en orden de evaluación."""
        params = iter(self.weights.params)
        return [(layer, next(params) if layer.has_params else None) for layer in self.spec.layers]


def default_spec(
    depth: int = 2,
    base_channels: int = 8,
    activation: str = 'relu',
    beta: float = 10.0,
) -> FeatNetSpec:
    """Etapas Conv -> activación -> AvgPool con canales que se duplican.

    depth=2 da la arquitectura por defecto Conv(1→8)·ReLU·Pool·Conv(8→16)·ReLU·Pool.
    """
    if depth < 1:
        raise InvalidNetSpec("depth debe ser al menos 1")
    if activation not in ('relu', 'softplus'):
        raise InvalidNetSpec(f"activación desconocida: {activation}")
    layers: List[Layer] = []
    in_ch = 1
    for stage in range(depth):
        out_ch = base_channels * 2 ** stage
        layers.append(Conv2D(in_ch, out_ch))
        layers.append(ReLU() if activation == 'relu' else Softplus(beta))
        layers.append(AvgPool(2))
        in_ch = out_ch
    return FeatNetSpec(layers=tuple(layers))
