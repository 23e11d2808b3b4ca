"""Unsigned integer codecs over an MSB-first bitstream.

The codec layer is unsigned-only: signed values enter through
``zigzag_map`` and leave through ``zigzag_unmap``. Bits are packed
most-significant-bit first within each byte; finished streams are
zero-padded to a byte boundary and a decoder must consume exactly the
bits that were written.

Codecs: raw64 (fixed 64-bit little-endian), varint (LEB128, 7-bit
groups, continuation bit high), rice(k) (unary quotient + k remainder
bits), elias_gamma (applied to u+1 so zero is representable).
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from enum import IntEnum
from typing import Sequence

import numpy as np

from .errors import CorruptData, InvalidInput, Overflow, ValueTooLarge

I64_MIN = -(1 << 63)
I64_MAX = (1 << 63) - 1
U64_MAX = (1 << 64) - 1

# Cap on the Rice unary quotient; bounds both encode output size and
# decode work on adversarial streams.
RICE_QUOTIENT_LIMIT = 1 << 24

RICE_PICK_MAX_K = 32


class CodecKind(IntEnum):
    """Stable numeric codec identifiers used by the container format."""

    RAW64 = 0
    VARINT = 1
    RICE = 2
    ELIAS_GAMMA = 3


# Names as they appear on the CLI and in reports.
CODEC_NAMES = {
    CodecKind.RAW64: "raw64",
    CodecKind.VARINT: "varint",
    CodecKind.RICE: "rice",
    CodecKind.ELIAS_GAMMA: "gamma",
}
KIND_BY_NAME = {name: kind for kind, name in CODEC_NAMES.items()}


@dataclass(frozen=True)
class CodecId:
    """A codec choice; ``rice_k`` is None for auto-selection at encode time."""

    kind: CodecKind
    rice_k: int | None = 0

    def __post_init__(self) -> None:
        if self.kind == CodecKind.RICE:
            if self.rice_k is not None and not 0 <= self.rice_k <= 63:
                raise InvalidInput(f"rice parameter k={self.rice_k} outside [0, 63]")
        elif self.rice_k not in (0, None):
            raise InvalidInput(f"rice_k must be 0 for codec {self.kind.name}")

    @property
    def name(self) -> str:
        return CODEC_NAMES[self.kind]


RAW64 = CodecId(CodecKind.RAW64)
VARINT = CodecId(CodecKind.VARINT)
ELIAS_GAMMA = CodecId(CodecKind.ELIAS_GAMMA)


def rice(k: int | None = None) -> CodecId:
    """Rice codec with parameter k, or auto-picked per dataset when None."""
    return CodecId(CodecKind.RICE, k)


# ---------------------------------------------------------------------------
# Bit I/O


class BitWriter:
    """Accumulates bits MSB-first; ``getvalue`` zero-pads to a byte boundary."""

    def __init__(self) -> None:
        self._buf = bytearray()
        self._acc = 0
        self._nbits = 0

    def write_bit(self, bit: int) -> None:
        self.write_bits(bit & 1, 1)

    def write_bits(self, value: int, nbits: int) -> None:
        if nbits == 0:
            return
        acc = (self._acc << nbits) | (value & ((1 << nbits) - 1))
        nbits += self._nbits
        buf = self._buf
        while nbits >= 8:
            nbits -= 8
            buf.append((acc >> nbits) & 0xFF)
        self._acc = acc & ((1 << nbits) - 1)
        self._nbits = nbits

    @property
    def bit_length(self) -> int:
        return 8 * len(self._buf) + self._nbits

    def getvalue(self) -> bytes:
        if self._nbits:
            return bytes(self._buf) + bytes([(self._acc << (8 - self._nbits)) & 0xFF])
        return bytes(self._buf)


class BitReader:
    """Reads bits MSB-first from a byte string, tracking exact consumption."""

    def __init__(self, data: bytes, bit_length: int | None = None) -> None:
        self._data = data
        self._bit_length = 8 * len(data) if bit_length is None else bit_length
        self._pos = 0

    def read_bit(self) -> int:
        pos = self._pos
        if pos >= self._bit_length:
            raise CorruptData("bit stream exhausted")
        self._pos = pos + 1
        return (self._data[pos >> 3] >> (7 - (pos & 7))) & 1

    def read_bits(self, nbits: int) -> int:
        if nbits == 0:
            return 0
        start = self._pos
        end = start + nbits
        if end > self._bit_length:
            raise CorruptData("bit stream exhausted")
        self._pos = end
        chunk = int.from_bytes(self._data[start >> 3 : ((end - 1) >> 3) + 1], "big")
        return (chunk >> (7 - ((end - 1) & 7))) & ((1 << nbits) - 1)

    @property
    def bits_consumed(self) -> int:
        return self._pos

    @property
    def bits_remaining(self) -> int:
        return self._bit_length - self._pos


# ---------------------------------------------------------------------------
# Value-level mappings


def zigzag_map(v: int) -> int:
    """Interleave signed onto unsigned: 0->0, -1->1, 1->2, -2->3, ..."""
    if not I64_MIN <= v <= I64_MAX:
        raise ValueTooLarge(f"{v} outside signed 64-bit range")
    return (v << 1) if v >= 0 else ((-v) << 1) - 1


def zigzag_unmap(u: int) -> int:
    if not 0 <= u <= U64_MAX:
        raise ValueTooLarge(f"{u} outside unsigned 64-bit range")
    return (u >> 1) if (u & 1) == 0 else -((u + 1) >> 1)


def delta_transform(data: Sequence[int]) -> list[int]:
    """First element verbatim, then consecutive differences; overflow-checked."""
    if not data:
        raise InvalidInput("delta_transform requires a nonempty sequence")
    out = [data[0]]
    prev = data[0]
    for v in data[1:]:
        d = v - prev
        if not I64_MIN <= d <= I64_MAX:
            raise Overflow(f"delta {d} outside signed 64-bit range")
        out.append(d)
        prev = v
    return out


def delta_inverse(deltas: Sequence[int]) -> list[int]:
    if not deltas:
        raise InvalidInput("delta_inverse requires a nonempty sequence")
    out = [deltas[0]]
    acc = deltas[0]
    for d in deltas[1:]:
        acc += d
        if not I64_MIN <= acc <= I64_MAX:
            raise Overflow(f"running sum {acc} outside signed 64-bit range")
        out.append(acc)
    return out


def _check_u64(u: int) -> None:
    if not 0 <= u <= U64_MAX:
        raise ValueTooLarge(f"{u} outside unsigned 64-bit range")


# ---------------------------------------------------------------------------
# Per-value codecs


def varint_encode(u: int, out: BitWriter) -> None:
    """LEB128: 7-bit groups, low group first, continuation bit high."""
    _check_u64(u)
    while u >= 0x80:
        out.write_bits((u & 0x7F) | 0x80, 8)
        u >>= 7
    out.write_bits(u, 8)


def varint_decode(reader: BitReader) -> int:
    result = 0
    for i in range(10):
        try:
            b = reader.read_bits(8)
        except CorruptData:
            raise CorruptData("truncated varint") from None
        result |= (b & 0x7F) << (7 * i)
        if not b & 0x80:
            if result > U64_MAX:
                raise CorruptData("varint exceeds 64 bits")
            return result
    raise CorruptData("varint longer than 10 bytes")


def _write_unary(q: int, out: BitWriter) -> None:
    # q ones then a zero; chunked so huge runs stay linear-time.
    while q >= 32:
        out.write_bits(0xFFFFFFFF, 32)
        q -= 32
    out.write_bits(((1 << q) - 1) << 1, q + 1)


def rice_encode(u: int, k: int, out: BitWriter) -> None:
    """Unary quotient (u >> k) followed by the k low remainder bits."""
    _check_u64(u)
    if not 0 <= k <= 63:
        raise InvalidInput(f"rice parameter k={k} outside [0, 63]")
    q = u >> k
    if q >= RICE_QUOTIENT_LIMIT:
        raise ValueTooLarge(f"rice quotient {q} exceeds guard {RICE_QUOTIENT_LIMIT}")
    _write_unary(q, out)
    out.write_bits(u & ((1 << k) - 1), k)


def rice_decode(reader: BitReader, k: int) -> int:
    if not 0 <= k <= 63:
        raise InvalidInput(f"rice parameter k={k} outside [0, 63]")
    q = 0
    while True:
        try:
            bit = reader.read_bit()
        except CorruptData:
            raise CorruptData("truncated rice codeword") from None
        if not bit:
            break
        q += 1
        if q >= RICE_QUOTIENT_LIMIT:
            raise CorruptData("rice unary run exceeds guard")
    try:
        r = reader.read_bits(k)
    except CorruptData:
        raise CorruptData("truncated rice codeword") from None
    return (q << k) | r


def gamma_encode(u: int, out: BitWriter) -> None:
    """Elias gamma of (u + 1): n-1 zeros, then the n-bit binary of u+1."""
    _check_u64(u)
    v = u + 1
    out.write_bits(v, 2 * v.bit_length() - 1)


def gamma_decode(reader: BitReader) -> int:
    zeros = 0
    while True:
        try:
            bit = reader.read_bit()
        except CorruptData:
            raise CorruptData("truncated gamma codeword") from None
        if bit:
            break
        zeros += 1
        if zeros > 64:
            raise CorruptData("gamma length prefix exceeds 64")
    try:
        rest = reader.read_bits(zeros)
    except CorruptData:
        raise CorruptData("truncated gamma codeword") from None
    return ((1 << zeros) | rest) - 1


def raw64_encode(u: int, out: BitWriter) -> None:
    """Fixed 64-bit little-endian byte order."""
    _check_u64(u)
    for _ in range(8):
        out.write_bits(u & 0xFF, 8)
        u >>= 8


def raw64_decode(reader: BitReader) -> int:
    u = 0
    for i in range(8):
        try:
            u |= reader.read_bits(8) << (8 * i)
        except CorruptData:
            raise CorruptData("truncated raw64 value") from None
    return u


# ---------------------------------------------------------------------------
# Exact per-value bit costs (no encoding performed)


def varint_cost_bits(u: int) -> int:
    return 8 * max(1, (u.bit_length() + 6) // 7)

def rice_cost_bits(u: int, k: int) -> int:
    return (u >> k) + 1 + k

def gamma_cost_bits(u: int) -> int:
    return 2 * (u + 1).bit_length() - 1

def raw64_cost_bits(u: int) -> int:
    return 64


def sequence_cost_bits(values: Sequence[int], codec: CodecId) -> int:
    """Exact total payload bits for unsigned ``values`` under ``codec``."""
    kind = codec.kind
    if kind == CodecKind.RAW64:
        return 64 * len(values)
    if kind == CodecKind.VARINT:
        return sum(varint_cost_bits(u) for u in values)
    if kind == CodecKind.RICE:
        k = codec.rice_k if codec.rice_k is not None else rice_pick_k(values)
        return sum(rice_cost_bits(u, k) for u in values)
    return sum(gamma_cost_bits(u) for u in values)


def rice_pick_k(values: Sequence[int]) -> int:
    """Exact argmin of total rice bit cost over k in [0, 32]; ties pick smaller k."""
    n = len(values)
    if n == 0:
        raise InvalidInput("rice_pick_k requires at least one value")
    top = max(values)
    if top == 0:
        return 0
    if n <= (1 << 62) // top:
        # Shifted sums cannot overflow 64 bits here, so vectorize.
        arr = np.asarray(values, dtype=np.uint64)
        quotient_sums = [int((arr >> k).sum()) for k in range(RICE_PICK_MAX_K + 1)]
    else:
        quotient_sums = [sum(u >> k for u in values) for k in range(RICE_PICK_MAX_K + 1)]
    best_k = 0
    best = None
    for k in range(RICE_PICK_MAX_K + 1):
        total = n * (k + 1) + quotient_sums[k]
        if best is None or total < best:
            best, best_k = total, k
    return best_k


# ---------------------------------------------------------------------------
# Whole-payload helpers (used by the container and benchmarks)

_ENCODERS = {
    CodecKind.VARINT: varint_encode,
    CodecKind.ELIAS_GAMMA: gamma_encode,
}
_DECODERS = {
    CodecKind.VARINT: varint_decode,
    CodecKind.ELIAS_GAMMA: gamma_decode,
}


def resolve_codec(codec: CodecId, values: Sequence[int]) -> CodecId:
    """Pin an auto rice parameter to the concrete best k for ``values``."""
    if codec.kind == CodecKind.RICE and codec.rice_k is None:
        return CodecId(CodecKind.RICE, rice_pick_k(values))
    return codec


def encode_payload(values: Sequence[int], codec: CodecId) -> bytes:
    """Encode unsigned values back-to-back; result is zero-padded to bytes."""
    codec = resolve_codec(codec, values)
    if codec.kind == CodecKind.RAW64:
        return struct.pack(f"<{len(values)}Q", *values)
    out = BitWriter()
    if codec.kind == CodecKind.RICE:
        k = codec.rice_k
        for u in values:
            rice_encode(u, k, out)
    else:
        enc = _ENCODERS[codec.kind]
        for u in values:
            enc(u, out)
    return out.getvalue()


def decode_payload(data: bytes, n_values: int, codec: CodecId) -> list[int]:
    """Decode exactly ``n_values`` and demand zero padding with no trailing bytes."""
    if codec.kind == CodecKind.RICE and codec.rice_k is None:
        raise InvalidInput("decode_payload requires a concrete rice parameter")
    if codec.kind == CodecKind.RAW64:
        if len(data) != 8 * n_values:
            raise CorruptData(
                f"raw64 payload is {len(data)} bytes, expected {8 * n_values}"
            )
        return list(struct.unpack(f"<{n_values}Q", data))
    reader = BitReader(data)
    if codec.kind == CodecKind.RICE:
        k = codec.rice_k
        values = [rice_decode(reader, k) for _ in range(n_values)]
    else:
        dec = _DECODERS[codec.kind]
        values = [dec(reader) for _ in range(n_values)]
    if reader.bits_remaining >= 8:
        raise CorruptData("trailing bytes after payload")
    if reader.bits_remaining and reader.read_bits(reader.bits_remaining) != 0:
        raise CorruptData("nonzero padding bits after payload")
    return values
