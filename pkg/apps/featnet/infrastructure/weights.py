"""
Binary Weights Repository.
Formato de fichero de pesos: cabecera little-endian + float32, ida y vuelta bit-exacta.
Ver docs/WEIGHTS_FORMAT.md para la tabla de bytes.
"""

import logging
import struct
from pathlib import Path
from typing import List, Optional, Tuple

import numpy as np

from apps.featnet.domain.entities import FeatNet, FeatNetSpec, FeatNetWeights, InputNorm
from apps.featnet.domain.exceptions import InvalidNetSpec, InvalidWeights, WeightsFormatError
from apps.featnet.domain.interfaces import WeightsRepositoryInterface
from apps.featnet.domain.layers import (
    AvgPool,
    Conv2D,
    Dense,
    Layer,
    LayerKind,
    LayerParams,
    ReLU,
    Softplus,
)
from shared.domain.exceptions import NotFoundException

logger = logging.getLogger(__name__)

WEIGHTS_MAGIC = b'FNET'
WEIGHTS_VERSION = 1

_HEADER = struct.Struct('<4sHHdd')
_KIND = struct.Struct('<B')
_LAYER_PAYLOAD = {
    LayerKind.CONV2D: struct.Struct('<HH'),
    LayerKind.RELU: struct.Struct('<'),
    LayerKind.SOFTPLUS: struct.Struct('<d'),
    LayerKind.AVGPOOL: struct.Struct('<B'),
    LayerKind.DENSE: struct.Struct('<II'),
}
_FLOAT = np.dtype('<f4')


def _layer_fields(layer: Layer) -> Tuple:
    if isinstance(layer, Conv2D):
        return layer.in_ch, layer.out_ch
    if isinstance(layer, Softplus):
        return (layer.beta,)
    if isinstance(layer, AvgPool):
        return (layer.size,)
    if isinstance(layer, Dense):
        return layer.in_features, layer.out_features
    return ()


def _build_layer(kind: LayerKind, fields: Tuple) -> Layer:
    if kind is LayerKind.CONV2D:
        return Conv2D(*fields)
    if kind is LayerKind.RELU:
        return ReLU()
    if kind is LayerKind.SOFTPLUS:
        return Softplus(*fields)
    if kind is LayerKind.AVGPOOL:
        return AvgPool(*fields)
    return Dense(*fields)


def serialize_net(net: FeatNet) -> bytes:
    """Codificar especificación y pesos."""
    spec = net.spec
    chunks = [_HEADER.pack(
        WEIGHTS_MAGIC,
        WEIGHTS_VERSION,
        len(spec.layers),
        spec.input_norm.scale,
        spec.input_norm.offset,
    )]
    for layer in spec.layers:
        chunks.append(_KIND.pack(layer.kind.value))
        chunks.append(_LAYER_PAYLOAD[layer.kind].pack(*_layer_fields(layer)))
    for params in net.weights.params:
        chunks.append(params.kernel.astype(_FLOAT).tobytes())
        chunks.append(params.bias.astype(_FLOAT).tobytes())
    return b''.join(chunks)


class _Reader:
    """Cursor sobre los bytes del fichero con errores de truncado."""

    def __init__(self, data: bytes, source: str):
        self.data = data
        self.source = source
        self.pos = 0

    def unpack(self, layout: struct.Struct, what: str) -> Tuple:
        end = self.pos + layout.size
        if end > len(self.data):
            raise WeightsFormatError(self.source, f"fichero truncado leyendo {what}")
        values = layout.unpack_from(self.data, self.pos)
        self.pos = end
        return values

    def floats(self, shape: Tuple[int, ...], what: str) -> np.ndarray:
        count = int(np.prod(shape))
        end = self.pos + count * _FLOAT.itemsize
        if end > len(self.data):
            raise WeightsFormatError(self.source, f"fichero truncado leyendo {what}")
        values = np.frombuffer(self.data, dtype=_FLOAT, count=count, offset=self.pos)
        self.pos = end
        return values.astype(np.float32).reshape(shape)


def deserialize_net(data: bytes, source: str = '<memory>') -> FeatNet:
    """Decodificar un fichero de pesos completo."""
    reader = _Reader(data, source)
    magic, version, n_layers, scale, offset = reader.unpack(_HEADER, 'cabecera')
    if magic != WEIGHTS_MAGIC:
        raise WeightsFormatError(source, f"número mágico {magic!r} inválido")
    if version != WEIGHTS_VERSION:
        raise WeightsFormatError(source, f"versión {version} no soportada")

    layers: List[Layer] = []
    for index in range(n_layers):
        (kind_value,) = reader.unpack(_KIND, f"tipo de capa {index}")
        try:
            kind = LayerKind(kind_value)
        except ValueError:
            raise WeightsFormatError(source, f"tipo de capa desconocido {kind_value}")
        fields = reader.unpack(_LAYER_PAYLOAD[kind], f"capa {index}")
        try:
            layers.append(_build_layer(kind, fields))
        except ValueError as exc:
            raise WeightsFormatError(source, f"capa {index}: {exc}")

    try:
        spec = FeatNetSpec(layers=tuple(layers), input_norm=InputNorm(scale, offset))
    except InvalidNetSpec as exc:
        raise WeightsFormatError(source, exc.message)

    params = []
    for index, layer in enumerate(spec.weighted_layers):
        kernel_shape, bias_shape = layer.param_shapes()
        kernel = reader.floats(kernel_shape, f"núcleo {index}")
        bias = reader.floats(bias_shape, f"sesgo {index}")
        params.append(LayerParams(kernel=kernel, bias=bias))
    if reader.pos != len(data):
        raise WeightsFormatError(source, f"{len(data) - reader.pos} bytes sobrantes")

    return FeatNet(spec=spec, weights=FeatNetWeights(params=tuple(params)))


class BinaryWeightsRepository(WeightsRepositoryInterface):
    """Repositorio de redes sobre el formato binario FNET."""

    def load(self, path: Path, spec: Optional[FeatNetSpec] = None) -> FeatNet:
        path = Path(path)
        try:
            data = path.read_bytes()
        except FileNotFoundError:
            raise NotFoundException('Fichero de pesos', str(path))
        except OSError as exc:
            raise WeightsFormatError(str(path), f"no se pudo leer: {exc}")

        net = deserialize_net(data, str(path))
        if spec is not None and net.spec != spec:
            raise InvalidWeights(f"el fichero {path} no coincide con la especificación declarada")
        logger.info(
            f"Pesos cargados: {path} ({len(net.spec.layers)} capas, "
            f"{len(net.weights.params)} con parámetros)"
        )
        return net

    def save(self, path: Path, net: FeatNet) -> None:
        Path(path).write_bytes(serialize_net(net))
        logger.info(f"Pesos guardados: {path}")


def load_weights(path, spec: Optional[FeatNetSpec] = None) -> FeatNet:
    return BinaryWeightsRepository().load(path, spec)


def save_weights(path, net: FeatNet) -> None:
    BinaryWeightsRepository().save(path, net)
