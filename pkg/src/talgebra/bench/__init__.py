"""Benchmark harness: MNIST ingestion, variant grid, PSNR reporting."""

from .dataset import Dataset, IdxFormatError, load_idx, sample_dataset
from .metrics import psnr
from .variants import ALL_VARIANTS, VARIANTS, VariantSpec, parse_variants, variant_tvector
from .experiment import DEFAULT_DIMS, PsnrReport, run_experiment
from .reports import emit_reports, write_pgm

__all__ = [
    "Dataset",
    "IdxFormatError",
    "load_idx",
    "sample_dataset",
    "psnr",
    "VariantSpec",
    "VARIANTS",
    "ALL_VARIANTS",
    "parse_variants",
    "variant_tvector",
    "DEFAULT_DIMS",
    "PsnrReport",
    "run_experiment",
    "emit_reports",
    "write_pgm",
]
