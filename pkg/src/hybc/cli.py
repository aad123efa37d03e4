"""Command-line interface: compress, decompress, bench, report.

Exit codes: 0 on success, 1 for runtime/IO/integrity failures, 2 for usage
errors (click's convention, kept deliberately).
"""
from __future__ import annotations

import json
from pathlib import Path

import click

from . import __version__
from .bench import BenchConfig, BenchRow, run_bench, write_analysis_reports, write_reports
from .errors import HybcError
from .metrics import DsBasis, Measurement, compression_ratio
from .pipeline import (
    FILE_EXTENSION,
    PipelineSpec,
    compress_pipeline,
    decompress_pipeline,
    pipeline_from_name,
)
from .report import FORMATS, environment_metadata
from .scoring import Weights, rank_pipelines


def _parse_pipeline(name: str) -> PipelineSpec:
    try:
        return pipeline_from_name(name)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc


def _parse_weights(text: str) -> Weights:
    parts = text.split(",")
    if len(parts) != 3:
        raise click.UsageError('weights must be three comma-separated numbers, e.g. "0.4,0.3,0.3"')
    try:
        return Weights(*(float(p) for p in parts))
    except ValueError as exc:
        raise click.UsageError(f"bad weights {text!r}: {exc}") from exc


def _parse_formats(text: str) -> tuple[str, ...]:
    formats = tuple(p.strip().lower() for p in text.split(",") if p.strip())
    unknown = set(formats) - set(FORMATS)
    if not formats or unknown:
        raise click.UsageError(
            f"--format takes a comma-separated subset of {', '.join(FORMATS)}"
        )
    return formats


def _read_bytes(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise click.ClickException(f"cannot read {path}: {exc}") from exc


def _write_bytes(path: str, data: bytes) -> None:
    try:
        Path(path).write_bytes(data)
    except OSError as exc:
        raise click.ClickException(f"cannot write {path}: {exc}") from exc


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(__version__, prog_name="hybc")
def main() -> None:
    """Chained lossless compression with a self-describing container, plus a
    benchmark harness that ranks all 25 codec pipelines."""


@main.command()
@click.argument("input_path", metavar="INPUT")
@click.argument("output_path", metavar="OUTPUT")
@click.option(
    "--pipeline", "-p", "pipeline_name", required=True,
    help='Codec chain to apply, e.g. "Zstd+LZ4HC" or "LZMA".',
)
def compress(input_path: str, output_path: str, pipeline_name: str) -> None:
    """Compress INPUT into a self-describing container at OUTPUT."""
    spec = _parse_pipeline(pipeline_name)
    data = _read_bytes(input_path)
    try:
        container = compress_pipeline(spec, data)
    except HybcError as exc:
        raise click.ClickException(str(exc)) from exc
    _write_bytes(output_path, container)
    ratio = len(data) / len(container)
    click.echo(f"pipeline:   {spec.display_name}")
    click.echo(f"original:   {len(data)} bytes")
    click.echo(f"compressed: {len(container)} bytes ({FILE_EXTENSION} container)")
    click.echo(f"ratio:      {ratio:.4f}")


@main.command()
@click.argument("input_path", metavar="INPUT")
@click.argument("output_path", metavar="OUTPUT")
def decompress(input_path: str, output_path: str) -> None:
    """Restore the original bytes from a container; the header alone names
    the codec chain, so no pipeline argument is needed."""
    container = _read_bytes(input_path)
    try:
        data = decompress_pipeline(container)
    except HybcError as exc:
        raise click.ClickException(f"{type(exc).__name__}: {exc}") from exc
    _write_bytes(output_path, data)
    click.echo(f"restored {len(data)} bytes (integrity verified)")


def _echo_row(row: BenchRow) -> None:
    if row.error is not None:
        click.echo(f"  {row.dataset} | {row.pipeline.display_name}: ERROR {row.error}")
    else:
        m = row.measurement
        click.echo(
            f"  {row.dataset} | {row.pipeline.display_name}: "
            f"CR {compression_ratio(m):.2f}, "
            f"{m.compress_seconds * 1000:.1f} ms compress (median of {m.repetitions})"
        )


@main.command()
@click.argument("inputs", metavar="INPUTS...", nargs=-1, required=True)
@click.option("--pipelines", default="all", show_default=True,
              help='Comma-separated chains to run, or "all" for the full 25.')
@click.option("--reps", default=5, show_default=True, help="Timed repetitions per phase.")
@click.option("--weights", "weights_text", default="0.4,0.3,0.3", show_default=True,
              help="Efficiency weights as cr,cs,ds (must sum to 1).")
@click.option("--ds-basis", type=click.Choice([b.value for b in DsBasis]),
              default=DsBasis.COMPRESSED.value, show_default=True,
              help="Size basis for decompression speed.")
@click.option("--out", "out_dir", default="hybc-reports", show_default=True,
              help="Directory for report files.")
@click.option("--format", "formats_text", default="csv,json,md,svg", show_default=True,
              help="Report formats to write.")
@click.option("--head-to-head", default="Zstd+LZ4HC", show_default=True,
              help="Pipeline compared against the five standalone codecs.")
def bench(inputs, pipelines, reps, weights_text, ds_basis, out_dir, formats_text,
          head_to_head) -> None:
    """Benchmark every input x pipeline cell and write ranked reports."""
    specs = None
    if pipelines.strip().lower() != "all":
        specs = [_parse_pipeline(p) for p in pipelines.split(",") if p.strip()]
        if not specs:
            raise click.UsageError("--pipelines received an empty list")
    config = BenchConfig(
        inputs=[Path(p) for p in inputs],
        pipelines=specs,
        repetitions=reps,
        weights=_parse_weights(weights_text),
        ds_basis=DsBasis(ds_basis),
        output_dir=Path(out_dir),
        formats=_parse_formats(formats_text),
        head_to_head=_parse_pipeline(head_to_head),
    )
    try:
        config.validate()
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    click.echo(f"benchmarking {len(inputs)} input(s), reps={reps}")
    result = run_bench(config, progress=_echo_row)
    written = write_reports(result, config)
    click.echo(f"wrote {len(written)} report file(s) to {config.output_dir}")
    failed = result.failed_rows
    if failed:
        raise click.ClickException(f"{len(failed)} of {len(result.rows)} runs failed")


@main.command()
@click.argument("measurements_file", metavar="MEASUREMENTS_JSON")
@click.option("--weights", "weights_text", default="0.4,0.3,0.3", show_default=True,
              help="Efficiency weights as cr,cs,ds (must sum to 1).")
@click.option("--ds-basis", type=click.Choice([b.value for b in DsBasis]),
              default=DsBasis.COMPRESSED.value, show_default=True)
@click.option("--out", "out_dir", default="hybc-reports", show_default=True)
@click.option("--format", "formats_text", default="csv,json,md,svg", show_default=True)
@click.option("--head-to-head", default="Zstd+LZ4HC", show_default=True)
def report(measurements_file, weights_text, ds_basis, out_dir, formats_text,
           head_to_head) -> None:
    """Re-rank saved measurements and re-emit analysis reports, optionally
    with different weights or speed basis, without re-benchmarking."""
    weights = _parse_weights(weights_text)
    basis = DsBasis(ds_basis)
    formats = _parse_formats(formats_text)
    raw = _read_bytes(measurements_file)
    try:
        doc = json.loads(raw)
        measurements = _measurements_from_json(doc)
    except (ValueError, KeyError, TypeError) as exc:
        raise click.ClickException(f"bad measurements file: {exc}") from exc
    if not measurements:
        raise click.ClickException("measurements file holds no successful rows")
    by_dataset: dict[str, list[Measurement]] = {}
    for m in measurements:
        by_dataset.setdefault(m.dataset, []).append(m)
    rankings = {
        name: rank_pipelines(rows, weights, basis)
        for name, rows in by_dataset.items()
        if len(rows) >= 2
    }
    if not rankings:
        raise click.ClickException("no dataset has the 2+ rows needed for ranking")
    config = BenchConfig(
        inputs=[Path(measurements_file)],
        weights=weights,
        ds_basis=basis,
        output_dir=Path(out_dir),
        formats=formats,
        head_to_head=_parse_pipeline(head_to_head),
    )
    metadata = environment_metadata(ds_basis=basis, weights=weights)
    written = write_analysis_reports(rankings, config, metadata)
    click.echo(f"wrote {len(written)} report file(s) to {out_dir}")


def _measurements_from_json(doc: dict) -> list[Measurement]:
    measurements = []
    for row in doc["rows"]:
        if row.get("status") != "ok":
            continue
        measurements.append(
            Measurement(
                pipeline=pipeline_from_name(row["pipeline"]),
                dataset=row["dataset"],
                original_bytes=int(row["original_bytes"]),
                compressed_bytes=int(row["compressed_bytes"]),
                compress_seconds=float(row["compress_seconds"]),
                decompress_seconds=float(row["decompress_seconds"]),
                repetitions=int(row["repetitions"]),
            )
        )
    return measurements


if __name__ == "__main__":
    main()
