import random
import struct
import zlib

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hybc.codecs import CodecId, compress_one
from hybc.errors import (
    BadMagic,
    CorruptStream,
    IntegrityMismatch,
    InvalidCodecByte,
    TruncatedContainer,
    UnsupportedVersion,
)
from hybc.pipeline import (
    HEADER_LEN,
    MAGIC,
    ContainerHeader,
    PipelineSpec,
    compress_pipeline,
    decompress_pipeline,
    enumerate_pipelines,
    parse_header,
    pipeline_from_name,
    serialize_header,
)


def test_enumeration_counts():
    pipes = enumerate_pipelines()
    assert len(pipes) == 25
    assert sum(p.is_hybrid for p in pipes) == 20
    assert len({p.display_name for p in pipes}) == 25


def test_enumeration_order_deterministic():
    pipes = enumerate_pipelines()
    assert pipes == enumerate_pipelines()
    singles = pipes[:5]
    assert [p.first for p in singles] == list(CodecId)
    assert all(not p.is_hybrid for p in singles)
    pairs = [(p.first.value, p.second.value) for p in pipes[5:]]
    assert pairs == sorted(pairs)
    assert pipes[5].display_name == "LZMA + Zstd"


def test_no_self_pairs():
    assert all(p.second != p.first for p in enumerate_pipelines() if p.is_hybrid)


def test_self_pair_rejected():
    with pytest.raises(ValueError):
        PipelineSpec(CodecId.ZSTD, CodecId.ZSTD)


def test_display_names():
    assert PipelineSpec(CodecId.ZSTD).display_name == "Zstd"
    assert PipelineSpec(CodecId.ZSTD, CodecId.LZ4HC).display_name == "Zstd + LZ4HC"
    assert PipelineSpec(CodecId.BZIP2, CodecId.BROTLI).display_name == "Bzip2 + Brotli"


@pytest.mark.parametrize(
    "name,expected",
    [
        ("Zstd+LZ4HC", PipelineSpec(CodecId.ZSTD, CodecId.LZ4HC)),
        ("zstd + lz4hc", PipelineSpec(CodecId.ZSTD, CodecId.LZ4HC)),
        ("  BROTLI  ", PipelineSpec(CodecId.BROTLI)),
        ("LZMA+brotli", PipelineSpec(CodecId.LZMA, CodecId.BROTLI)),
        ("bzip2", PipelineSpec(CodecId.BZIP2)),
    ],
)
def test_pipeline_from_name(name, expected):
    assert pipeline_from_name(name) == expected


@pytest.mark.parametrize("bad", ["", "gzip", "zstd+zstd", "a+b+c", "+zstd", "zstd+"])
def test_pipeline_from_name_rejects(bad):
    with pytest.raises(ValueError):
        pipeline_from_name(bad)


# ---------------------------------------------------------------------------
# header

def test_header_is_twenty_bytes():
    h = ContainerHeader(CodecId.BROTLI, CodecId.ZSTD, 1000, 0xDEADBEEF)
    assert len(serialize_header(h)) == HEADER_LEN == 20


def test_header_round_trip_example():
    h = ContainerHeader(CodecId.BROTLI, CodecId.ZSTD, 1000, 12345)
    parsed = parse_header(serialize_header(h))
    assert parsed == h
    assert parsed.first_codec == 3
    assert parsed.second_codec == 2
    assert parsed.original_len == 1000


@settings(max_examples=200, deadline=None)
@given(
    first=st.sampled_from(list(CodecId)),
    second=st.one_of(st.none(), st.sampled_from(list(CodecId))),
    length=st.integers(min_value=0, max_value=2**64 - 1),
    crc=st.integers(min_value=0, max_value=2**32 - 1),
)
def test_header_serialize_parse_inverse(first, second, length, crc):
    if second == first:
        second = None
    h = ContainerHeader(first, second, length, crc)
    assert parse_header(serialize_header(h)) == h


def test_parse_truncated():
    with pytest.raises(TruncatedContainer):
        parse_header(b"HYBC\x01\x02\x00\x00\x00\x00")


def test_parse_bad_magic():
    buf = b"XXXX" + serialize_header(
        ContainerHeader(CodecId.ZSTD, None, 0, 0)
    )[4:]
    with pytest.raises(BadMagic):
        parse_header(buf)


def test_parse_unsupported_version():
    buf = bytearray(serialize_header(ContainerHeader(CodecId.ZSTD, None, 0, 0)))
    buf[4] = 2
    with pytest.raises(UnsupportedVersion):
        parse_header(bytes(buf))


def test_parse_nonzero_reserved_rejected():
    buf = bytearray(serialize_header(ContainerHeader(CodecId.ZSTD, None, 0, 0)))
    buf[7] = 1
    with pytest.raises(UnsupportedVersion):
        parse_header(bytes(buf))


@pytest.mark.parametrize("first,second", [(0, 0), (7, 0), (1, 7), (2, 2), (0, 3)])
def test_parse_invalid_codec_bytes(first, second):
    buf = struct.pack("<4sBBBBQI", MAGIC, 1, first, second, 0, 0, 0)
    with pytest.raises(InvalidCodecByte):
        parse_header(buf)


# ---------------------------------------------------------------------------
# compress / decompress

def test_single_stage_header_contract(tiny_text):
    container = compress_pipeline(PipelineSpec(CodecId.ZSTD), tiny_text)
    h = parse_header(container)
    assert h.first_codec == CodecId.ZSTD
    assert h.second_codec is None
    assert h.original_len == len(tiny_text)
    assert h.original_crc32 == zlib.crc32(tiny_text)


def test_container_is_header_plus_codec_stream(tiny_text):
    container = compress_pipeline(PipelineSpec(CodecId.ZSTD), tiny_text)
    assert container[HEADER_LEN:] == compress_one(CodecId.ZSTD, tiny_text)


@pytest.mark.parametrize("payload", ["words", "repetitive"])
def test_round_trip_all_pipelines(payload, tiny_text):
    data = tiny_text if payload == "words" else ("अ" * 1024).encode("utf-8")
    for spec in enumerate_pipelines():
        container = compress_pipeline(spec, data)
        assert decompress_pipeline(container) == data, spec.display_name


def test_hybrid_round_trip_example(tiny_text):
    spec = PipelineSpec(CodecId.LZMA, CodecId.BROTLI)
    assert decompress_pipeline(compress_pipeline(spec, tiny_text)) == tiny_text


def test_incompressible_input_expands_but_round_trips():
    noise = random.Random(511).randbytes(1024)
    for spec in (PipelineSpec(CodecId.LZ4HC), PipelineSpec(CodecId.LZMA, CodecId.BZIP2)):
        container = compress_pipeline(spec, noise)
        assert len(container) > len(noise)  # expansion is allowed, not an error
        assert decompress_pipeline(container) == noise


def test_decompress_rejects_bad_magic(tiny_text):
    container = compress_pipeline(PipelineSpec(CodecId.ZSTD), tiny_text)
    with pytest.raises(BadMagic):
        decompress_pipeline(b"XXXX" + container[4:])


def test_decompress_detects_wrong_original_len(tiny_text):
    container = bytearray(compress_pipeline(PipelineSpec(CodecId.ZSTD), tiny_text))
    struct.pack_into("<Q", container, 8, len(tiny_text) + 1)
    with pytest.raises((IntegrityMismatch, CorruptStream)):
        decompress_pipeline(bytes(container))


def test_decompress_detects_wrong_crc(tiny_text):
    container = bytearray(compress_pipeline(PipelineSpec(CodecId.ZSTD), tiny_text))
    struct.pack_into("<I", container, 16, zlib.crc32(tiny_text) ^ 0xFFFF)
    with pytest.raises(IntegrityMismatch):
        decompress_pipeline(bytes(container))


@pytest.mark.parametrize(
    "spec",
    [PipelineSpec(c) for c in CodecId] + [PipelineSpec(CodecId.ZSTD, CodecId.LZ4HC)],
    ids=lambda s: s.display_name,
)
def test_payload_corruption_never_silent(spec, tiny_text):
    # a flip can land in bits the stream format ignores (bzip2 has a few),
    # in which case the decode must still return the exact original bytes;
    # returning anything else without an error is the failure mode
    container = compress_pipeline(spec, tiny_text)
    payload_len = len(container) - HEADER_LEN
    step = max(1, payload_len // 64)
    for offset in range(0, payload_len, step):
        damaged = bytearray(container)
        damaged[HEADER_LEN + offset] ^= 0x5A
        try:
            restored = decompress_pipeline(bytes(damaged))
        except (CorruptStream, IntegrityMismatch):
            continue
        assert restored == tiny_text, f"wrong bytes returned (offset {offset})"


def test_small_corpus_container_regression(small_corpus):
    # pins the chained stream against accidental codec or framing drift;
    # expected to change only when a codec library version changes
    container = compress_pipeline(
        PipelineSpec(CodecId.ZSTD, CodecId.LZ4HC), small_corpus
    )
    assert len(container) < len(small_corpus)
    assert len(container) == 23937
