"""Command line front end: `talgebra bench` and `talgebra reconstruct`.

Both subcommands read MNIST-style IDX file pairs, draw a seeded
class-balanced train/query split, and run the variant grid machinery.
`bench` writes CSV/SVG reports; `reconstruct` writes a query image and its
reconstruction as PGM files for visual inspection.  The TALGEBRA_THREADS
environment variable sets the default parallelism; --parallelism wins.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from .bench.dataset import IdxFormatError, load_idx, sample_dataset
from .bench.experiment import run_experiment, reconstruct_images
from .bench.reports import emit_reports, write_pgm
from .bench.variants import VARIANTS, parse_variants

__all__ = ["main"]


def _parse_dims(text: str) -> list[int]:
    """Either 'start:stop:step' (inclusive stop) or comma-separated values."""
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"dims range must be start:stop:step, got {text!r}")
        start, stop, step = (int(p) for p in parts)
        if step <= 0 or stop < start:
            raise ValueError(f"bad dims range {text!r}")
        return list(range(start, stop + 1, step))
    return [int(p) for p in text.split(",") if p.strip()]


def _add_data_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--train-images", required=True, help="IDX image file")
    p.add_argument("--train-labels", required=True, help="IDX label file")
    p.add_argument("--test-images", help="optional separate query pool (IDX images)")
    p.add_argument("--test-labels", help="labels for --test-images")
    p.add_argument("--seed", type=int, default=0, help="sampling seed (default 0)")
    p.add_argument("--per-class-train", type=int, default=60)
    p.add_argument("--per-class-query", type=int, default=10)
    p.add_argument("--precision", choices=("c64", "c128"), default=None,
                   help="force one complex dtype (default: c128, TPCA-B c64)")
    p.add_argument("--parallelism", type=int, default=None,
                   help="worker threads (default: TALGEBRA_THREADS or CPU count)")


def _load_dataset(args):
    images, labels = load_idx(args.train_images, args.train_labels)
    q_images = q_labels = None
    if (args.test_images is None) != (args.test_labels is None):
        raise ValueError("--test-images and --test-labels must be given together")
    if args.test_images is not None:
        q_images, q_labels = load_idx(args.test_images, args.test_labels)
    return sample_dataset(
        images,
        labels,
        args.seed,
        per_class_train=args.per_class_train,
        per_class_query=args.per_class_query,
        query_images=q_images,
        query_labels=q_labels,
    )


def _cmd_bench(args) -> int:
    dataset = _load_dataset(args)
    report = run_experiment(
        dataset,
        variants=parse_variants(args.variants),
        dims=_parse_dims(args.dims),
        precision=args.precision,
        parallelism=args.parallelism,
        reduced=args.reduced,
        progress=lambda msg: print(msg, file=sys.stderr),
    )
    paths = emit_reports(report, args.out)

    name_w = max(len(n) for n in report.variant_names)
    print("aggregate PSNR (dB)")
    print(" " * name_w + "".join(f"{d:>9}" for d in report.dims))
    for name in report.variant_names:
        row = "".join(f"{report.aggregate_db[name][d]:>9.3f}" for d in report.dims)
        print(f"{name:<{name_w}}{row}")
    for path in paths:
        print(f"wrote {path}", file=sys.stderr)
    return 0


def _cmd_reconstruct(args) -> int:
    key = args.variant.strip().lower()
    if key not in VARIANTS:
        raise ValueError(f"unknown variant {args.variant!r}; choose from {', '.join(VARIANTS)}")
    spec = VARIANTS[key]
    dataset = _load_dataset(args)
    indices = args.image_index
    recs = reconstruct_images(
        dataset, spec, args.d, indices,
        precision=args.precision, parallelism=args.parallelism,
    )
    os.makedirs(args.out, exist_ok=True)
    for rec, idx in zip(recs, indices):
        orig_path = write_pgm(
            os.path.join(args.out, f"original_{idx}.pgm"), dataset.query_images[idx]
        )
        rec_img = np.clip(np.rint(rec), 0, 255).astype(np.uint8)
        rec_path = write_pgm(
            os.path.join(args.out, f"{key}_d{args.d}_{idx}.pgm"), rec_img
        )
        print(f"wrote {orig_path}")
        print(f"wrote {rec_path}")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="talgebra",
        description="PCA / tensorial-PCA image compression benchmark",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bench", help="run the variant grid and emit CSV/SVG reports")
    _add_data_args(b)
    b.add_argument("--variants", default="pca,tpca,tpca-a,tpca-b,tpca-x,tpca-y,tpca-z",
                   help="comma-separated subset of the variant grid")
    b.add_argument("--dims", default="50:500:50",
                   help="feature dimensions, start:stop:step or comma list")
    b.add_argument("--out", required=True, help="output directory for reports")
    b.add_argument("--reduced", action="store_true",
                   help="run TPCA-B on a 10+2 per-class subset")

    r = sub.add_parser("reconstruct", help="write one reconstruction as PGM")
    _add_data_args(r)
    r.add_argument("--variant", required=True, help="variant name, e.g. tpca-x")
    r.add_argument("--d", type=int, required=True, help="feature dimension")
    r.add_argument("--image-index", type=int, action="append", required=True,
                   help="0-based query image index (repeatable)")
    r.add_argument("--out", default=".", help="output directory (default: .)")

    args = parser.parse_args(argv)
    try:
        if args.command == "bench":
            return _cmd_bench(args)
        return _cmd_reconstruct(args)
    except (ValueError, IdxFormatError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
