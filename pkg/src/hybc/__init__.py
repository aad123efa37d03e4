"""hybc: chained lossless compression with a benchmark-and-ranking harness.

Five codecs (LZMA, Zstd, Brotli, Bzip2, LZ4HC) run under fixed presets,
alone or chained in ordered pairs; outputs are wrapped in a self-describing
container so decompression needs no out-of-band knowledge. The harness
measures every pipeline on UTF-8 text corpora and ranks them by a weighted
min-max-normalized efficiency score.
"""

from .codecs import (
    CodecConfig,
    CodecId,
    codec_params,
    compress_one,
    decompress_one,
    library_versions,
)
from .corpus import (
    DatasetDescriptor,
    SizeClass,
    classify_size,
    devanagari_fraction,
    generate_synthetic,
    load_dataset,
)
from .errors import (
    BadMagic,
    CodecFailure,
    ContainerError,
    CorruptStream,
    HybcError,
    IntegrityMismatch,
    InvalidCodecByte,
    InvalidUtf8,
    MixedCohort,
    RoundTripMismatch,
    TruncatedContainer,
    UnsupportedVersion,
)
from .metrics import (
    DsBasis,
    Measurement,
    compression_ratio,
    compression_speed,
    decompression_speed,
    measure,
)
from .pipeline import (
    CONTAINER_VERSION,
    FILE_EXTENSION,
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
from .scoring import (
    DEFAULT_WEIGHTS,
    EfficiencyRow,
    Weights,
    balance_table,
    component_frequency,
    efficiency_score,
    minmax_normalize,
    rank_pipelines,
)

__version__ = "0.1.0"

__all__ = [
    "BadMagic",
    "CodecConfig",
    "CodecFailure",
    "CodecId",
    "ContainerError",
    "ContainerHeader",
    "CorruptStream",
    "CONTAINER_VERSION",
    "DatasetDescriptor",
    "DEFAULT_WEIGHTS",
    "DsBasis",
    "EfficiencyRow",
    "FILE_EXTENSION",
    "HEADER_LEN",
    "HybcError",
    "IntegrityMismatch",
    "InvalidCodecByte",
    "InvalidUtf8",
    "MAGIC",
    "Measurement",
    "MixedCohort",
    "PipelineSpec",
    "RoundTripMismatch",
    "SizeClass",
    "TruncatedContainer",
    "UnsupportedVersion",
    "Weights",
    "balance_table",
    "classify_size",
    "codec_params",
    "component_frequency",
    "compress_one",
    "compress_pipeline",
    "compression_ratio",
    "compression_speed",
    "decompress_one",
    "decompress_pipeline",
    "decompression_speed",
    "devanagari_fraction",
    "efficiency_score",
    "enumerate_pipelines",
    "generate_synthetic",
    "library_versions",
    "load_dataset",
    "measure",
    "minmax_normalize",
    "parse_header",
    "pipeline_from_name",
    "rank_pipelines",
    "serialize_header",
]
