import statistics

import pytest

from hybc.codecs import CodecId
from hybc.errors import RoundTripMismatch
from hybc.metrics import (
    MB,
    DsBasis,
    Measurement,
    compression_ratio,
    compression_speed,
    decompression_speed,
    measure,
)
from hybc.pipeline import PipelineSpec


def _measurement(original, compressed, tc=1.0, td=1.0, reps=1):
    return Measurement(
        pipeline=PipelineSpec(CodecId.ZSTD),
        dataset="d",
        original_bytes=original,
        compressed_bytes=compressed,
        compress_seconds=tc,
        decompress_seconds=td,
        repetitions=reps,
    )


class ScriptedClock:
    """Fake monotonic clock: each call advances by the next scripted delta."""

    def __init__(self, deltas):
        self._now = 0.0
        self._deltas = iter(deltas)

    def __call__(self):
        self._now += next(self._deltas)
        return self._now


def test_measure_basic_contract():
    data = (b"namaste duniya " * 70000)[: 1 << 20]
    m = measure(PipelineSpec(CodecId.ZSTD), data, 5, dataset="mib")
    assert m.repetitions == 5
    assert m.dataset == "mib"
    assert m.original_bytes == len(data)
    assert m.compressed_bytes >= 20
    assert m.compress_seconds > 0
    assert m.decompress_seconds > 0


def test_measure_rejects_zero_repetitions(tiny_text):
    with pytest.raises(ValueError):
        measure(PipelineSpec(CodecId.ZSTD), tiny_text, 0)


def test_measure_rejects_empty_input():
    with pytest.raises(ValueError):
        measure(PipelineSpec(CodecId.ZSTD), b"", 3)


def test_measure_aborts_on_round_trip_mismatch(tiny_text, monkeypatch):
    monkeypatch.setattr("hybc.metrics.decompress_pipeline", lambda container: b"wrong")
    with pytest.raises(RoundTripMismatch):
        measure(PipelineSpec(CodecId.ZSTD), tiny_text, 1)


def test_measurement_lock_held_while_timing(tiny_text):
    import hybc.metrics as metrics_mod

    seen = []

    def probing_clock():
        seen.append(metrics_mod._MEASUREMENT_LOCK.locked())
        return len(seen) * 0.001

    measure(PipelineSpec(CodecId.ZSTD), tiny_text, 1, clock=probing_clock)
    assert seen and all(seen)


def test_median_ignores_one_slow_repetition(tiny_text):
    # clock reads per repetition: compress start/stop, decompress start/stop
    gap = 0.001
    compress_durations = [0.010, 0.010, 9.000, 0.010, 0.010]
    decompress_durations = [0.005] * 5
    deltas = []
    for c, d in zip(compress_durations, decompress_durations):
        deltas += [gap, c, gap, d]
    m = measure(
        PipelineSpec(CodecId.ZSTD), tiny_text, 5, clock=ScriptedClock(deltas)
    )
    assert m.compress_seconds == pytest.approx(0.010)
    assert m.decompress_seconds == pytest.approx(0.005)
    assert m.compress_seconds == pytest.approx(
        statistics.median(compress_durations[:2] + compress_durations[3:] + [0.010])
    )


def test_compression_ratio_examples():
    assert compression_ratio(_measurement(102400, 51200)) == 2.0
    assert compression_ratio(_measurement(4096, 4096)) == 1.0
    assert compression_ratio(_measurement(13_312_000, 140_882)) == pytest.approx(
        94.49, rel=1e-4
    )


def test_compression_speed_examples():
    m = _measurement(13 * MB, 1000, tc=0.5)
    assert compression_speed(m) == 26.0
    m = _measurement(5_000_000, 1000, tc=1.0)
    assert compression_speed(m) == 5_000_000 / MB


def test_decompression_speed_examples():
    m = _measurement(4 * MB, MB, td=0.25)
    assert decompression_speed(m) == 4.0
    assert decompression_speed(m, DsBasis.ORIGINAL) == 16.0


def test_decompression_speed_default_basis_is_compressed():
    m = _measurement(10 * MB, 2 * MB, td=1.0)
    assert decompression_speed(m) == 2.0


def test_ratio_scale_covariant():
    base = compression_ratio(_measurement(1_000_001, 333_333))
    doubled = compression_ratio(_measurement(2_000_002, 666_666))
    assert base == doubled


def test_metrics_strictly_positive():
    m = _measurement(1, 20, tc=1e-6, td=1e-6)
    assert compression_ratio(m) > 0
    assert compression_speed(m) > 0
    assert decompression_speed(m) > 0


@pytest.mark.parametrize(
    "kwargs",
    [
        {"original": -1, "compressed": 20},
        {"original": 10, "compressed": 19},
        {"original": 10, "compressed": 20, "tc": 0.0},
        {"original": 10, "compressed": 20, "td": -1.0},
        {"original": 10, "compressed": 20, "reps": 0},
    ],
)
def test_measurement_validation(kwargs):
    with pytest.raises(ValueError):
        _measurement(**kwargs)
