"""
Coding Application Services.
Codificación de bloques candidatos, reconstrucción, ensamblado del contenedor y decodificación.
"""

import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from apps.coding.domain.entities import (
    MID_OFFSET,
    Bitstream,
    BitstreamHeader,
    CodedBlock,
    ModeId,
    QuantParams,
)
from apps.coding.domain.entropy import BitReader, BitWriter, count_bits, decode_block, encode_block
from apps.coding.domain.exceptions import MalformedBitstream
from apps.coding.domain.interfaces import BitstreamRepositoryInterface
from apps.coding.domain.quantization import dequantize, quantize
from apps.coding.domain.transforms import dct_forward, dct_inverse, from_scan, to_scan
from apps.coding.infrastructure.bitstream import BITSTREAM_VERSION, pack_bitstream, unpack_bitstream
from apps.imaging.domain.entities import MAX_SAMPLE, BlockGrid, ImagePlane
from apps.imaging.domain.interfaces import ImageRepositoryInterface

logger = logging.getLogger(__name__)

METRIC_TAG_NONE = 255


@dataclass(frozen=True, eq=False)
class CandidateCoding:
    """Resultado de codificar un bloque con un modo: coeficientes, niveles y bits exactos."""
    mode: ModeId
    coeffs: np.ndarray
    levels: np.ndarray
    dequantized: np.ndarray
    bits: int

    @property
    def residual(self) -> np.ndarray:
        """y - ŷ en el dominio transformado."""
        return self.coeffs - self.dequantized

    def coded_block(self) -> CodedBlock:
        return CodedBlock.create(self.mode, to_scan(self.levels, self.mode), self.bits)


def code_candidate(block: np.ndarray, mode: ModeId, q: QuantParams) -> CandidateCoding:
    """Transformar, cuantificar y contar bits de un bloque de 256 píxeles con el modo dado."""
    coeffs = dct_forward(np.asarray(block, dtype=np.float64) - MID_OFFSET, mode)
    levels = quantize(coeffs, q)
    bits = int(count_bits(to_scan(levels, mode), mode))
    return CandidateCoding(
        mode=mode,
        coeffs=coeffs,
        levels=levels,
        dequantized=dequantize(levels, q),
        bits=bits,
    )


def code_candidates(blocks: np.ndarray, mode: ModeId, q: QuantParams):
    """Versión vectorizada sobre (n, 256): coeficientes, niveles, descuantificados y bits."""
    coeffs = dct_forward(np.asarray(blocks, dtype=np.float64) - MID_OFFSET, mode)
    levels = quantize(coeffs, q)
    bits = count_bits(to_scan(levels, mode), mode)
    return coeffs, levels, dequantize(levels, q), bits


def reconstruct_block(qcoeffs: np.ndarray, mode: ModeId, q: QuantParams) -> np.ndarray:
    """Niveles en orden de barrido a bloque 16x16 sin recortar (desplazamiento 128 incluido)."""
    natural = from_scan(np.asarray(qcoeffs, dtype=np.int64), mode)
    pixels = dct_inverse(dequantize(natural, q), mode) + MID_OFFSET
    return pixels.reshape(16, 16)


def reconstruct_blocks(coded: Sequence[CodedBlock], q: QuantParams) -> np.ndarray:
    """Reconstrucción sin recortar (n_b, 256) de una lista de bloques codificados.

    Codificador y decodificador pasan por aquí, así la reconstrucción coincide bit a bit.
    """
    result = np.empty((len(coded), 256), dtype=np.float64)
    for mode in ModeId:
        members = [i for i, block in enumerate(coded) if block.mode is mode]
        if not members:
            continue
        scanned = np.stack([coded[i].qcoeffs for i in members])
        natural = from_scan(scanned, mode)
        result[members] = dct_inverse(dequantize(natural, q), mode) + MID_OFFSET
    return result


def clamp_samples(pixels: np.ndarray) -> np.ndarray:
    """Redondeo y recorte a [0, 255]; solo en el ensamblado final."""
    return np.clip(np.rint(pixels), 0, MAX_SAMPLE).astype(np.uint8)


def assemble_image(blocks: Sequence[np.ndarray], grid: BlockGrid, orig_width: int, orig_height: int) -> ImagePlane:
    """Reconstrucción sin recortar (n_b, 256) a plano de 8 bits."""
    stacked = np.asarray(blocks, dtype=np.float64).reshape(grid.n_b, 256)
    pixels = clamp_samples(grid.from_blocks(stacked))
    return ImagePlane.from_array(pixels, orig_width=orig_width, orig_height=orig_height)


def write_bitstream(
    plane: ImagePlane,
    coded: Sequence[CodedBlock],
    q: QuantParams,
    metric_tag: int,
) -> Bitstream:
    """Ensamblar el contenedor en orden de bloque (etapa secuencial de un único dueño)."""
    grid = plane.grid()
    if len(coded) != grid.n_b:
        raise MalformedBitstream(f"{len(coded)} bloques para una rejilla de {grid.n_b}")
    writer = BitWriter()
    for index, block in enumerate(coded):
        written = encode_block(writer, block.mode, block.qcoeffs)
        if written != block.bits:
            raise MalformedBitstream(
                f"bloque {index}: {written} bits escritos, {block.bits} contabilizados"
            )
    header = BitstreamHeader(
        version=BITSTREAM_VERSION,
        orig_width=plane.orig_width,
        orig_height=plane.orig_height,
        width=plane.width,
        height=plane.height,
        qp=q.qp,
        metric_tag=metric_tag,
        n_b=grid.n_b,
        payload_bits=len(writer),
    )
    return pack_bitstream(header, writer.to_bytes())


@dataclass(frozen=True, eq=False)
class DecodedImage:
    """Salida del decodificador."""
    header: BitstreamHeader
    blocks: List[CodedBlock]
    reconstruction: ImagePlane


def decode(data: bytes, resource: str = 'bitstream') -> DecodedImage:
    """Decodificar un contenedor; no requiere pesos ni sketch."""
    bitstream = unpack_bitstream(data, resource)
    header = bitstream.header
    q = QuantParams(header.qp)
    grid = BlockGrid(width=header.width, height=header.height)
    reader = BitReader(bitstream.payload, header.payload_bits)

    coded = [decode_block(reader) for _ in range(header.n_b)]
    if reader.remaining:
        raise MalformedBitstream(f"{reader.remaining} bits sobrantes en la carga útil", resource)
    reconstruction = assemble_image(reconstruct_blocks(coded, q), grid, header.orig_width, header.orig_height)
    logger.info(
        f"Flujo decodificado: {header.orig_width}x{header.orig_height}, QP {header.qp}, "
        f"{header.payload_bits} bits de carga útil"
    )
    return DecodedImage(header=header, blocks=coded, reconstruction=reconstruction)


class DecodeService:
    """Decodificación de fichero a fichero sobre los repositorios inyectados."""

    def __init__(
        self,
        bitstream_repository: BitstreamRepositoryInterface,
        image_repository: ImageRepositoryInterface,
    ):
        self.bitstream_repository = bitstream_repository
        self.image_repository = image_repository

    def decode_file(self, source, target) -> Tuple[DecodedImage, int]:
        """Decodificar source, guardar la región visible en target y devolver los bits leídos."""
        data = self.bitstream_repository.load(source)
        decoded = decode(data, resource=str(source))
        self.image_repository.save(target, decoded.reconstruction.visible_pixels)
        return decoded, 8 * len(data)


@dataclass(frozen=True, eq=False)
class ForcedEncoding:
    """Codificación con un único modo para todos los bloques."""
    bitstream: Bitstream
    blocks: List[CodedBlock]
    reconstruction: ImagePlane
    unclamped: np.ndarray


def encode_forced(plane: ImagePlane, mode: ModeId, q: QuantParams) -> ForcedEncoding:
    """Codificar todos los bloques con el modo dado, sin decisión RD."""
    grid = plane.grid()
    blocks = grid.to_blocks(plane.pixels.astype(np.float64))
    _, levels, _, bits = code_candidates(blocks, mode, q)
    coded = [
        CodedBlock.create(mode, to_scan(levels[i], mode), bits[i])
        for i in range(grid.n_b)
    ]
    unclamped = reconstruct_blocks(coded, q)
    bitstream = write_bitstream(plane, coded, q, METRIC_TAG_NONE)
    reconstruction = assemble_image(unclamped, grid, plane.orig_width, plane.orig_height)
    logger.debug(f"Codificación forzada {mode.name} a QP {q.qp}: {bitstream.total_bits} bits")
    return ForcedEncoding(bitstream=bitstream, blocks=coded, reconstruction=reconstruction, unclamped=unclamped)
