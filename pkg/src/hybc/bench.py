"""Benchmark orchestration: measure every input x pipeline cell, rank each
dataset's cohort, and write the report files.

A failing cell never aborts the run; it becomes an error row and the overall
result is marked unsuccessful. Measurements are serialized by the metrics
lock, so a bench is single-flight by construction.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

from .codecs import CodecId
from .corpus import DatasetDescriptor, load_dataset
from .errors import HybcError
from .metrics import (
    DsBasis,
    Measurement,
    compression_ratio,
    compression_speed,
    decompression_speed,
    measure,
)
from .pipeline import PipelineSpec, enumerate_pipelines
from .report import (
    FORMATS,
    emit_balance,
    emit_frequency,
    emit_measurements,
    emit_report,
    environment_metadata,
)
from .scoring import (
    DEFAULT_WEIGHTS,
    EfficiencyRow,
    Weights,
    balance_table,
    component_frequency,
    rank_pipelines,
)

FREQUENCY_TOP_K = 10

_DEFAULT_HEAD_TO_HEAD = PipelineSpec(CodecId.ZSTD, CodecId.LZ4HC)


@dataclass
class BenchConfig:
    inputs: Sequence[Path]
    pipelines: Sequence[PipelineSpec] | None = None  # None means all 25
    repetitions: int = 5
    weights: Weights = DEFAULT_WEIGHTS
    ds_basis: DsBasis = DsBasis.COMPRESSED
    output_dir: Path = Path("hybc-reports")
    formats: Sequence[str] = FORMATS
    head_to_head: PipelineSpec | None = _DEFAULT_HEAD_TO_HEAD

    def validate(self) -> None:
        if not self.inputs:
            raise ValueError("at least one input file is required")
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")
        if not self.formats:
            raise ValueError("at least one report format is required")
        unknown = set(self.formats) - set(FORMATS)
        if unknown:
            raise ValueError(f"unknown formats: {', '.join(sorted(unknown))}")


@dataclass
class BenchRow:
    dataset: str
    pipeline: PipelineSpec
    descriptor: DatasetDescriptor | None = None
    measurement: Measurement | None = None
    error: str | None = None


@dataclass
class BenchResult:
    rows: list[BenchRow] = field(default_factory=list)
    rankings: dict[str, list[EfficiencyRow]] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(row.error is None for row in self.rows)

    @property
    def failed_rows(self) -> list[BenchRow]:
        return [row for row in self.rows if row.error is not None]


def _dataset_names(paths: Sequence[Path]) -> list[str]:
    names: list[str] = []
    for path in paths:
        base = re.sub(r"[^A-Za-z0-9._-]", "_", Path(path).stem) or "dataset"
        name = base
        i = 2
        while name in names:
            name = f"{base}_{i}"
            i += 1
        names.append(name)
    return names


def run_bench(
    config: BenchConfig,
    progress: Callable[[BenchRow], None] | None = None,
) -> BenchResult:
    """Measure every input x pipeline combination and rank per dataset."""
    config.validate()
    specs = list(config.pipelines) if config.pipelines else enumerate_pipelines()
    result = BenchResult()
    names = _dataset_names(config.inputs)
    for name, path in zip(names, config.inputs):
        try:
            descriptor, data = load_dataset(path)
        except (OSError, HybcError) as exc:
            for spec in specs:
                row = BenchRow(dataset=name, pipeline=spec, error=str(exc))
                result.rows.append(row)
                if progress:
                    progress(row)
            continue
        ok_measurements = []
        for spec in specs:
            try:
                m = measure(spec, data, config.repetitions, dataset=name)
                row = BenchRow(
                    dataset=name, pipeline=spec, descriptor=descriptor, measurement=m
                )
                ok_measurements.append(m)
            except (HybcError, ValueError) as exc:
                row = BenchRow(
                    dataset=name, pipeline=spec, descriptor=descriptor, error=str(exc)
                )
            result.rows.append(row)
            if progress:
                progress(row)
        if len(ok_measurements) >= 2:
            result.rankings[name] = rank_pipelines(
                ok_measurements, config.weights, config.ds_basis
            )
    return result


# ---------------------------------------------------------------------------
# Report writing

def _measurement_record(row: BenchRow, ds_basis: DsBasis) -> dict:
    record: dict = {
        "dataset": row.dataset,
        "size_class": row.descriptor.size_class.label if row.descriptor else "",
        "pipeline": row.pipeline.display_name,
        "status": "ok" if row.error is None else "error",
        "original_bytes": "",
        "compressed_bytes": "",
        "compress_seconds": "",
        "decompress_seconds": "",
        "repetitions": "",
        "cr": "",
        "cs_mb_s": "",
        "ds_mb_s": "",
        "error": row.error or "",
    }
    m = row.measurement
    if m is not None:
        record.update(
            original_bytes=m.original_bytes,
            compressed_bytes=m.compressed_bytes,
            compress_seconds=m.compress_seconds,
            decompress_seconds=m.decompress_seconds,
            repetitions=m.repetitions,
            cr=compression_ratio(m),
            cs_mb_s=compression_speed(m),
            ds_mb_s=decompression_speed(m, ds_basis),
        )
    return record


def write_reports(result: BenchResult, config: BenchConfig) -> list[Path]:
    """Write measurement tables plus all analysis reports; returns the paths."""
    outdir = Path(config.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    metadata = environment_metadata(
        repetitions=config.repetitions,
        ds_basis=config.ds_basis,
        weights=config.weights,
    )
    written: list[Path] = []
    records = [_measurement_record(row, config.ds_basis) for row in result.rows]
    if "csv" in config.formats:
        path = outdir / "measurements.csv"
        path.write_bytes(emit_measurements(records, "csv"))
        written.append(path)
    if "json" in config.formats:
        path = outdir / "measurements.json"
        path.write_bytes(emit_measurements(records, "json", metadata=metadata))
        written.append(path)
    written.extend(
        write_analysis_reports(result.rankings, config, metadata, outdir=outdir)
    )
    return written


def write_analysis_reports(
    rankings: dict[str, list[EfficiencyRow]],
    config: BenchConfig,
    metadata: dict,
    *,
    outdir: Path | None = None,
) -> list[Path]:
    """Ranking, head-to-head, balance, and frequency files per requested format."""
    outdir = Path(outdir if outdir is not None else config.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    def emit(name: str, payload: bytes) -> None:
        path = outdir / name
        path.write_bytes(payload)
        written.append(path)

    for dataset, rows in rankings.items():
        for fmt in config.formats:
            emit(
                f"ranking_{dataset}.{fmt}",
                emit_report(rows, fmt, weights=config.weights, metadata=metadata),
            )
        duel = _head_to_head_rows(rows, config.head_to_head)
        if duel:
            for fmt in config.formats:
                emit(
                    f"head_to_head_{dataset}.{fmt}",
                    emit_report(duel, fmt, weights=config.weights, metadata=metadata),
                )
        pairs = balance_table(rows)
        for fmt in config.formats:
            emit(f"balance_{dataset}.{fmt}", emit_balance(pairs, fmt, metadata=metadata))

    if rankings:
        all_rows = [row for rows in rankings.values() for row in rows]
        counts = component_frequency(all_rows, k=FREQUENCY_TOP_K)
        total = sum(min(FREQUENCY_TOP_K, len(rows)) for rows in rankings.values())
        for fmt in config.formats:
            emit(
                f"frequency.{fmt}",
                emit_frequency(counts, fmt, total_rows=total, metadata=metadata),
            )
    return written


def _head_to_head_rows(
    rows: Sequence[EfficiencyRow], challenger: PipelineSpec | None
) -> list[EfficiencyRow]:
    """The challenger plus every standalone codec, in ranking order."""
    if challenger is None:
        return []
    keep = {challenger.display_name} | {c.canonical_name for c in CodecId}
    return [r for r in rows if r.pipeline.display_name in keep]
