#!/usr/bin/env python3
"""Convert per-class digit JSON files into an IDX image/label pair.

Input: a directory of files named <label>.json, each holding
{"data": [v0, v1, ...]} with pixel intensities on a 0-1 scale, row-major,
28x28 per image (the layout of the npm `mnist` package, which bundles a
10000-image sample of the MNIST handwritten digits).  Values are pixel/255
rounded to 3 decimals, so multiplying by 255 and rounding recovers the
original uint8 intensities exactly.

Output: big-endian IDX files (image magic 0x00000803, label magic
0x00000801), images concatenated class by class in ascending label order.

Usage: convert_digit_json_to_idx.py <json_dir> <out_images> <out_labels>
"""

import json
import struct
import sys
from pathlib import Path

import numpy as np

ROWS = COLS = 28


def convert(json_dir: Path, out_images: Path, out_labels: Path) -> None:
    blocks = []
    labels = []
    for label in range(10):
        path = json_dir / f"{label}.json"
        if not path.exists():
            continue
        with open(path) as f:
            flat = np.asarray(json.load(f)["data"], dtype=np.float64)
        if flat.size % (ROWS * COLS) != 0:
            raise SystemExit(f"{path}: size {flat.size} not a multiple of {ROWS * COLS}")
        scaled = flat * 255.0
        pixels = np.rint(scaled)
        if np.abs(scaled - pixels).max() >= 0.5:
            raise SystemExit(f"{path}: values are not rounded 0-255 intensities")
        images = pixels.astype(np.uint8).reshape(-1, ROWS, COLS)
        blocks.append(images)
        labels.extend([label] * images.shape[0])
        print(f"{path.name}: {images.shape[0]} images")
    if not blocks:
        raise SystemExit(f"no <label>.json files found in {json_dir}")

    images = np.concatenate(blocks)
    labels = np.asarray(labels, dtype=np.uint8)
    with open(out_images, "wb") as f:
        f.write(struct.pack(">IIII", 0x00000803, images.shape[0], ROWS, COLS))
        f.write(images.tobytes())
    with open(out_labels, "wb") as f:
        f.write(struct.pack(">II", 0x00000801, labels.shape[0]))
        f.write(labels.tobytes())
    print(f"wrote {out_images} ({images.shape[0]} images) and {out_labels}")


if __name__ == "__main__":
    if len(sys.argv) != 4:
        raise SystemExit(__doc__)
    convert(Path(sys.argv[1]), Path(sys.argv[2]), Path(sys.argv[3]))
