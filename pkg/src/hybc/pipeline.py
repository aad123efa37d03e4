"""One- and two-stage compression chains and the self-describing container.

A container is a fixed 20-byte header followed by the (possibly chained)
codec payload. The header records the codec chain, the original length, and
a CRC-32 of the original bytes, so decompression needs no out-of-band
knowledge and silent corruption cannot pass unnoticed.
"""
from __future__ import annotations

import struct
import zlib
from dataclasses import dataclass

from .codecs import CodecId, compress_one, decompress_one
from .errors import (
    BadMagic,
    IntegrityMismatch,
    InvalidCodecByte,
    TruncatedContainer,
    UnsupportedVersion,
)

MAGIC = b"HYBC"
CONTAINER_VERSION = 1
HEADER_LEN = 20
FILE_EXTENSION = ".hybc"

# magic, version, first codec, second codec (0 = none), reserved,
# original length (u64 LE), original CRC-32 (u32 LE)
_HEADER = struct.Struct("<4sBBBBQI")
assert _HEADER.size == HEADER_LEN


@dataclass(frozen=True)
class PipelineSpec:
    """An ordered chain of one or two distinct codecs."""

    first: CodecId
    second: CodecId | None = None

    def __post_init__(self):
        object.__setattr__(self, "first", CodecId(self.first))
        if self.second is not None:
            object.__setattr__(self, "second", CodecId(self.second))
            if self.second == self.first:
                raise ValueError("a hybrid must chain two distinct codecs")

    @property
    def is_hybrid(self) -> bool:
        return self.second is not None

    @property
    def display_name(self) -> str:
        if self.second is None:
            return self.first.canonical_name
        return f"{self.first.canonical_name} + {self.second.canonical_name}"

    @property
    def codecs(self) -> tuple[CodecId, ...]:
        return (self.first,) if self.second is None else (self.first, self.second)


_NAME_TO_CODEC = {c.canonical_name.lower(): c for c in CodecId}


def pipeline_from_name(name: str) -> PipelineSpec:
    """Parse "A" or "A+B" (case-insensitive, spaces around '+' ignored)."""
    parts = [p.strip().lower() for p in name.split("+")]
    if not 1 <= len(parts) <= 2 or not all(parts):
        raise ValueError(f"cannot parse pipeline name {name!r}")
    try:
        codecs = [_NAME_TO_CODEC[p] for p in parts]
    except KeyError as exc:
        raise ValueError(f"unknown codec {exc.args[0]!r} in {name!r}") from None
    if len(codecs) == 2 and codecs[0] == codecs[1]:
        raise ValueError(f"pipeline {name!r} repeats the same codec")
    return PipelineSpec(codecs[0], codecs[1] if len(codecs) == 2 else None)


def enumerate_pipelines() -> list[PipelineSpec]:
    """All 25 benchmarked chains: 5 singles, then the 20 ordered distinct
    pairs in lexicographic (first, second) order."""
    singles = [PipelineSpec(c) for c in CodecId]
    pairs = [
        PipelineSpec(a, b) for a in CodecId for b in CodecId if a != b
    ]
    return singles + pairs


@dataclass(frozen=True)
class ContainerHeader:
    first_codec: CodecId
    second_codec: CodecId | None
    original_len: int
    original_crc32: int


def serialize_header(header: ContainerHeader) -> bytes:
    return _HEADER.pack(
        MAGIC,
        CONTAINER_VERSION,
        int(header.first_codec),
        int(header.second_codec) if header.second_codec is not None else 0,
        0,
        header.original_len,
        header.original_crc32,
    )


def parse_header(buf: bytes) -> ContainerHeader:
    """Decode the fixed 20-byte header; the payload is never inspected."""
    if len(buf) < HEADER_LEN:
        raise TruncatedContainer(
            f"need {HEADER_LEN} header bytes, got {len(buf)}"
        )
    magic, version, first, second, reserved, length, crc = _HEADER.unpack_from(buf)
    if magic != MAGIC:
        raise BadMagic(f"not a container (magic {magic!r})")
    if version != CONTAINER_VERSION or reserved != 0:
        raise UnsupportedVersion(f"container version {version} not supported")
    if not 1 <= first <= 5:
        raise InvalidCodecByte(f"first codec byte {first} out of range")
    if not 0 <= second <= 5:
        raise InvalidCodecByte(f"second codec byte {second} out of range")
    if second != 0 and second == first:
        raise InvalidCodecByte("first and second codec bytes are equal")
    return ContainerHeader(
        first_codec=CodecId(first),
        second_codec=CodecId(second) if second else None,
        original_len=length,
        original_crc32=crc,
    )


def compress_pipeline(spec: PipelineSpec, data: bytes) -> bytes:
    """Apply the chain in order and frame the result as a container."""
    payload = compress_one(spec.first, data)
    if spec.second is not None:
        payload = compress_one(spec.second, payload)
    header = ContainerHeader(
        first_codec=spec.first,
        second_codec=spec.second,
        original_len=len(data),
        original_crc32=zlib.crc32(data),
    )
    return serialize_header(header) + payload


def decompress_pipeline(container: bytes) -> bytes:
    """Invert the recorded chain (second stage first) and verify integrity."""
    header = parse_header(container)
    payload = container[HEADER_LEN:]
    if header.second_codec is not None:
        payload = decompress_one(header.second_codec, payload)
    data = decompress_one(header.first_codec, payload)
    if len(data) != header.original_len:
        raise IntegrityMismatch(
            f"decoded {len(data)} bytes, header says {header.original_len}"
        )
    if zlib.crc32(data) != header.original_crc32:
        raise IntegrityMismatch("CRC-32 of decoded payload does not match header")
    return data
