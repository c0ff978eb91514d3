"""
Entropy Coding.
Pares (carrera, nivel) con Exp-Golomb de orden 0 y símbolo de fin de bloque por unidad.

Por cada unidad de transformada, en orden de barrido:
  - cada coeficiente no nulo: ue(carrera + 1), ue(|nivel| - 1), bit de signo (1 = negativo)
  - fin de unidad: ue(0), es decir el bit '1'
Cada macrobloque empieza con un bit de modo (0 = T16, 1 = T4).
"""

from typing import List

import numpy as np

from .entities import BLOCK_PIXELS, CodedBlock, ModeId
from .exceptions import MalformedBitstream

MODE_FLAG_BITS = 1
EOB_BITS = 1


def ue_length(values: np.ndarray) -> np.ndarray:
    """Longitud en bits de ue(v) = 2·floor(log2(v+1)) + 1, vectorizada."""
    _, exponent = np.frexp(np.asarray(values, dtype=np.float64) + 1.0)
    return 2 * exponent.astype(np.int64) - 1


def count_bits(levels: np.ndarray, mode: ModeId) -> np.ndarray:
    """Bits exactos de uno o varios bloques (..., 256) en orden de barrido, bit de modo incluido.

    Coincide con la longitud que escribe encode_block.
    """
    levels = np.asarray(levels, dtype=np.int64)
    lead = levels.shape[:-1]
    units = levels.reshape(*lead, mode.n_units, mode.unit_length)
    nonzero = units != 0
    index = np.arange(mode.unit_length)
    last = np.maximum.accumulate(np.where(nonzero, index, -1), axis=-1)
    previous = np.concatenate([np.full(last.shape[:-1] + (1,), -1), last[..., :-1]], axis=-1)
    runs = index - previous - 1
    pair_bits = ue_length(runs + 1) + ue_length(np.abs(units) - 1) + 1
    coeff_bits = np.sum(np.where(nonzero, pair_bits, 0), axis=(-2, -1))
    return coeff_bits + MODE_FLAG_BITS + EOB_BITS * mode.n_units


class BitWriter:
    """Escritor de bits MSB primero."""

    def __init__(self):
        self._bits: List[int] = []

    def __len__(self) -> int:
        return len(self._bits)

    def write_bit(self, bit: int) -> None:
        self._bits.append(1 if bit else 0)

    def write_bits(self, value: int, count: int) -> None:
        for shift in range(count - 1, -1, -1):
            self._bits.append((value >> shift) & 1)

    def write_ue(self, value: int) -> None:
        code = value + 1
        width = code.bit_length()
        self._bits.extend([0] * (width - 1))
        self.write_bits(code, width)

    def to_bytes(self) -> bytes:
        """Bits empaquetados MSB primero; el último byte se rellena con ceros."""
        return np.packbits(np.array(self._bits, dtype=np.uint8)).tobytes()


class BitReader:
    """Lector de bits MSB primero sobre un número conocido de bits."""

    def __init__(self, data: bytes, n_bits: int = None):
        bits = np.unpackbits(np.frombuffer(data, dtype=np.uint8))
        if n_bits is not None:
            if n_bits > bits.size:
                raise MalformedBitstream(f"se declaran {n_bits} bits y hay {bits.size}")
            bits = bits[:n_bits]
        self._bits = bits.tolist()
        self.pos = 0

    @property
    def remaining(self) -> int:
        return len(self._bits) - self.pos

    def read_bit(self) -> int:
        if self.pos >= len(self._bits):
            raise MalformedBitstream("fin inesperado de la carga útil")
        bit = self._bits[self.pos]
        self.pos += 1
        return bit

    def read_bits(self, count: int) -> int:
        value = 0
        for _ in range(count):
            value = (value << 1) | self.read_bit()
        return value

    def read_ue(self) -> int:
        zeros = 0
        while self.read_bit() == 0:
            zeros += 1
            if zeros > 32:
                raise MalformedBitstream("código Exp-Golomb demasiado largo")
        return ((1 << zeros) | self.read_bits(zeros)) - 1


def encode_block(writer: BitWriter, mode: ModeId, levels: np.ndarray) -> int:
    """Escribir un macrobloque; devuelve los bits emitidos."""
    start = len(writer)
    writer.write_bit(mode.value)
    units = np.asarray(levels, dtype=np.int64).reshape(mode.n_units, mode.unit_length)
    for unit in units:
        run = 0
        for level in unit.tolist():
            if level == 0:
                run += 1
                continue
            writer.write_ue(run + 1)
            writer.write_ue(abs(level) - 1)
            writer.write_bit(level < 0)
            run = 0
        writer.write_ue(0)
    return len(writer) - start


def decode_block(reader: BitReader) -> CodedBlock:
    """Leer un macrobloque completo (bit de modo + unidades)."""
    start = reader.pos
    mode = ModeId(reader.read_bit())
    levels = np.zeros(BLOCK_PIXELS, dtype=np.int64)
    for unit in range(mode.n_units):
        base = unit * mode.unit_length
        pos = 0
        while True:
            symbol = reader.read_ue()
            if symbol == 0:
                break
            pos += symbol - 1
            if pos >= mode.unit_length:
                raise MalformedBitstream(f"carrera fuera de la unidad {unit}")
            magnitude = reader.read_ue() + 1
            levels[base + pos] = -magnitude if reader.read_bit() else magnitude
            pos += 1
    return CodedBlock.create(mode, levels, reader.pos - start)


def entropy_encode(levels: np.ndarray, mode: ModeId):
    """(bits, carga útil) de un único bloque."""
    writer = BitWriter()
    bits = encode_block(writer, mode, levels)
    return bits, writer.to_bytes()


def entropy_decode(payload: bytes, n_bits: int = None) -> CodedBlock:
    """Inversa de entropy_encode."""
    reader = BitReader(payload, n_bits)
    block = decode_block(reader)
    if n_bits is not None and reader.remaining:
        raise MalformedBitstream(f"{reader.remaining} bits sobrantes tras el bloque")
    return block
