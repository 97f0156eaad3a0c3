"""Miniature run of the compression benchmark on the bundled digit sample.

Uses a small per-class split so the whole thing finishes in seconds; the
full-scale experiment is `talgebra bench` with the default 60+10 split."""

import argparse
import os
import sys

from talgebra.bench import (
    VARIANTS,
    emit_reports,
    load_idx,
    run_experiment,
    sample_dataset,
)

HERE = os.path.dirname(os.path.abspath(__file__))
DATA = os.path.join(HERE, "..", "tests", "data")


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--train-images", default=os.path.join(DATA, "mnist10k-images-idx3-ubyte"))
    ap.add_argument("--train-labels", default=os.path.join(DATA, "mnist10k-labels-idx1-ubyte"))
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default="mini-reports")
    args = ap.parse_args(argv)

    images, labels = load_idx(args.train_images, args.train_labels)
    dataset = sample_dataset(
        images, labels, seed=args.seed, per_class_train=5, per_class_query=1
    )
    print(f"{len(dataset.train_images)} train / {len(dataset.query_images)} query images")

    report = run_experiment(
        dataset,
        variants=[VARIANTS[k] for k in ("pca", "tpca", "tpca-x")],
        dims=[10, 25, 50],
        progress=lambda msg: print(msg, file=sys.stderr),
    )

    print("\naggregate PSNR (dB)")
    print("variant   " + "".join(f"{d:>8}" for d in report.dims))
    for name in report.variant_names:
        row = "".join(f"{report.aggregate_db[name][d]:>8.2f}" for d in report.dims)
        print(f"{name:<10}{row}")

    for path in emit_reports(report, args.out):
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
