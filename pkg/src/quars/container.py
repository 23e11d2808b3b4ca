"""Self-describing byte container binding transform metadata to a codec payload.

Layout (all multi-byte header integers are LEB128 varints, bins are
zigzag-mapped before the varint; see FORMAT.md for the bit-exact
contract):

    magic "QRS1" | version u8 | flags u8 | codec_id u8 | rice_k u8
    q varint | n_values varint | bin_count varint
    bin_count zigzag+varint shuffled left bounds (sort order)
    zigzag+varint global upper bound
    payload: n_values codewords, zero-padded to a byte boundary

Writers always apply the reshuffling transform (flags bit 0); bit 1
records an optional delta step applied before it. Identical inputs
produce identical bytes.
"""

from __future__ import annotations

from typing import BinaryIO, Sequence

from .codecs import (
    BitReader,
    CodecId,
    CodecKind,
    I64_MAX,
    decode_payload,
    delta_inverse,
    delta_transform,
    encode_payload,
    resolve_codec,
    varint_decode,
    zigzag_map,
    zigzag_unmap,
)
from .errors import CorruptData, MagicMismatch, Overflow, UnsupportedVersion
from .transform import ShuffleMetadata, decode, encode

MAGIC = b"QRS1"
VERSION = 1
FLAG_QUARS = 0x01
FLAG_DELTA = 0x02
_KNOWN_FLAGS = FLAG_QUARS | FLAG_DELTA
_HEADER_FIXED = 8  # magic + version + flags + codec_id + rice_k


def _write_varint(buf: bytearray, u: int) -> None:
    while u >= 0x80:
        buf.append((u & 0x7F) | 0x80)
        u >>= 7
    buf.append(u)


def write_container(
    data: Sequence[int],
    q: int,
    codec: CodecId,
    use_delta: bool,
    sink: BinaryIO,
) -> int:
    """Transform, encode and frame ``data``; returns the byte count written."""
    working = delta_transform(data) if use_delta else data
    metadata, transformed = encode(working, q)
    if metadata.global_upper_bound > I64_MAX:
        raise Overflow("global upper bound exceeds signed 64-bit range")
    u_values = [zigzag_map(v) for v in transformed]
    codec = resolve_codec(codec, u_values)
    payload = encode_payload(u_values, codec)

    header = bytearray(MAGIC)
    header.append(VERSION)
    header.append(FLAG_QUARS | (FLAG_DELTA if use_delta else 0))
    header.append(int(codec.kind))
    header.append(codec.rice_k if codec.kind == CodecKind.RICE else 0)
    _write_varint(header, q)
    _write_varint(header, len(data))
    _write_varint(header, len(metadata.shuffled_left_bounds))
    for bound in metadata.shuffled_left_bounds:
        _write_varint(header, zigzag_map(bound))
    _write_varint(header, zigzag_map(metadata.global_upper_bound))

    sink.write(bytes(header))
    sink.write(payload)
    return len(header) + len(payload)


def read_container(source: BinaryIO) -> list[int]:
    """Parse and fully invert a container, returning the original values."""
    raw = source.read()
    if raw[:4] != MAGIC:
        raise MagicMismatch("not a quars container (bad magic)")
    if len(raw) < _HEADER_FIXED:
        raise CorruptData("truncated header")
    if raw[4] != VERSION:
        raise UnsupportedVersion(f"unsupported container version {raw[4]}")
    flags = raw[5]
    if flags & ~_KNOWN_FLAGS:
        raise CorruptData(f"unknown flag bits 0x{flags:02x}")
    if not flags & FLAG_QUARS:
        raise CorruptData("container lacks the transform flag required by v1")
    try:
        kind = CodecKind(raw[6])
    except ValueError:
        raise CorruptData(f"unknown codec id {raw[6]}") from None
    rice_k = raw[7]
    if kind == CodecKind.RICE:
        if rice_k > 63:
            raise CorruptData(f"rice parameter {rice_k} outside [0, 63]")
    elif rice_k != 0:
        raise CorruptData("nonzero rice parameter for a non-rice codec")
    codec = CodecId(kind, rice_k)

    reader = BitReader(raw[_HEADER_FIXED:])
    q = varint_decode(reader)
    n_values = varint_decode(reader)
    bin_count = varint_decode(reader)
    if q < 1:
        raise CorruptData("q must be >= 1")
    if n_values < 1:
        raise CorruptData("n_values must be >= 1")
    if bin_count < 1 or bin_count > q + 1:
        raise CorruptData(f"bin count {bin_count} outside [1, q+1]")
    bounds = tuple(zigzag_unmap(varint_decode(reader)) for _ in range(bin_count))
    upper = zigzag_unmap(varint_decode(reader))

    payload = raw[_HEADER_FIXED + reader.bits_consumed // 8 :]
    u_values = decode_payload(payload, n_values, codec)
    transformed = [zigzag_unmap(u) for u in u_values]
    values = decode(transformed, ShuffleMetadata(bounds, upper))
    if flags & FLAG_DELTA:
        try:
            values = delta_inverse(values)
        except Overflow as exc:
            raise CorruptData(f"delta inversion overflows: {exc}") from exc
    return values
