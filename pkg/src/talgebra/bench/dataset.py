"""IDX file ingestion and seeded class-balanced train/query sampling."""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

__all__ = ["IdxFormatError", "Dataset", "load_idx", "sample_dataset"]

IMAGE_MAGIC = 0x00000803
LABEL_MAGIC = 0x00000801


class IdxFormatError(ValueError):
    """Raised when an IDX file has a bad magic, is truncated, or counts disagree."""


def _read_exact(f, n: int, path, what: str) -> bytes:
    off = f.tell()
    buf = f.read(n)
    if len(buf) != n:
        raise IdxFormatError(
            f"{path}: truncated {what} at byte offset {off}: expected {n} bytes, found {len(buf)}"
        )
    return buf


def _load_image_file(path) -> np.ndarray:
    with open(path, "rb") as f:
        (magic,) = struct.unpack(">I", _read_exact(f, 4, path, "magic"))
        if magic != IMAGE_MAGIC:
            raise IdxFormatError(
                f"{path}: bad image magic 0x{magic:08x} at byte offset 0, "
                f"expected 0x{IMAGE_MAGIC:08x}"
            )
        n, rows, cols = struct.unpack(">III", _read_exact(f, 12, path, "image header"))
        data = _read_exact(f, n * rows * cols, path, "image data")
    return np.frombuffer(data, dtype=np.uint8).reshape(n, rows, cols)


def _load_label_file(path) -> np.ndarray:
    with open(path, "rb") as f:
        (magic,) = struct.unpack(">I", _read_exact(f, 4, path, "magic"))
        if magic != LABEL_MAGIC:
            raise IdxFormatError(
                f"{path}: bad label magic 0x{magic:08x} at byte offset 0, "
                f"expected 0x{LABEL_MAGIC:08x}"
            )
        (n,) = struct.unpack(">I", _read_exact(f, 4, path, "label header"))
        data = _read_exact(f, n, path, "label data")
    return np.frombuffer(data, dtype=np.uint8)


def load_idx(images_path, labels_path) -> tuple[np.ndarray, np.ndarray]:
    """Parse a big-endian IDX image/label file pair.

    Returns ``(images, labels)`` with images as a uint8 array of shape
    (n, rows, cols) on the raw 0-255 scale and labels as a uint8 array of
    shape (n,).  Bad magic numbers, truncation and count mismatches raise
    :class:`IdxFormatError` with the offending byte offset.
    """
    images = _load_image_file(images_path)
    labels = _load_label_file(labels_path)
    if images.shape[0] != labels.shape[0]:
        raise IdxFormatError(
            f"count mismatch: {images_path} holds {images.shape[0]} images but "
            f"{labels_path} holds {labels.shape[0]} labels"
        )
    return images, labels


@dataclass(frozen=True)
class Dataset:
    """Class-balanced, disjoint train/query image sets drawn by a seeded PRNG."""

    train_images: np.ndarray  # (n_train, R, C) uint8
    train_labels: np.ndarray  # (n_train,)
    query_images: np.ndarray  # (n_query, R, C) uint8
    query_labels: np.ndarray  # (n_query,)
    seed: int
    per_class_train: int
    per_class_query: int

    @property
    def image_shape(self) -> tuple[int, int]:
        return self.train_images.shape[1], self.train_images.shape[2]

    def subset(self, per_class_train: int, per_class_query: int) -> "Dataset":
        """Deterministic reduction: the first k members of each class block.

        Uses no new randomness, so a subset of a seeded dataset is itself
        reproducible from the same seed.
        """
        if not 1 <= per_class_train <= self.per_class_train:
            raise ValueError(
                f"per_class_train={per_class_train} outside [1, {self.per_class_train}]"
            )
        if not 1 <= per_class_query <= self.per_class_query:
            raise ValueError(
                f"per_class_query={per_class_query} outside [1, {self.per_class_query}]"
            )
        tr = np.concatenate(
            [
                np.flatnonzero(self.train_labels == c)[:per_class_train]
                for c in np.unique(self.train_labels)
            ]
        )
        qr = np.concatenate(
            [
                np.flatnonzero(self.query_labels == c)[:per_class_query]
                for c in np.unique(self.query_labels)
            ]
        )
        return Dataset(
            train_images=self.train_images[tr],
            train_labels=self.train_labels[tr],
            query_images=self.query_images[qr],
            query_labels=self.query_labels[qr],
            seed=self.seed,
            per_class_train=per_class_train,
            per_class_query=per_class_query,
        )


def _class_indices(labels: np.ndarray) -> list[np.ndarray]:
    return [np.flatnonzero(labels == c) for c in np.unique(labels)]


def sample_dataset(
    images: np.ndarray,
    labels: np.ndarray,
    seed: int,
    per_class_train: int = 60,
    per_class_query: int = 10,
    query_images: np.ndarray | None = None,
    query_labels: np.ndarray | None = None,
) -> Dataset:
    """Draw a class-balanced train/query split, reproducible from ``seed``.

    The PRNG is numpy's PCG64, fixed by name so the same seed yields the same
    split on any platform.  Classes are visited in sorted label order; each
    class pool is permuted once, the first ``per_class_train`` members go to
    train and the next ``per_class_query`` to query, so the two sets are
    disjoint.  When a separate query pool is given, train is drawn from the
    first pool and query from the second, each with its own permutation (train
    classes consume the PRNG first).
    """
    images = np.asarray(images)
    labels = np.asarray(labels)
    if images.ndim != 3 or images.shape[0] != labels.shape[0]:
        raise ValueError(
            f"expected (n, R, C) images with matching (n,) labels, "
            f"got {images.shape} and {labels.shape}"
        )
    if (query_images is None) != (query_labels is None):
        raise ValueError("query_images and query_labels must be given together")
    rng = np.random.Generator(np.random.PCG64(seed))

    train_idx = []
    query_idx = []
    for idx in _class_indices(labels):
        need = per_class_train + (0 if query_images is not None else per_class_query)
        if idx.size < need:
            raise ValueError(
                f"class {labels[idx[0]]} has {idx.size} members, needs {need}"
            )
        perm = idx[rng.permutation(idx.size)]
        train_idx.append(perm[:per_class_train])
        if query_images is None:
            query_idx.append(perm[per_class_train : per_class_train + per_class_query])

    if query_images is None:
        q_images, q_labels = images, labels
    else:
        q_images = np.asarray(query_images)
        q_labels = np.asarray(query_labels)
        if q_images.ndim != 3 or q_images.shape[0] != q_labels.shape[0]:
            raise ValueError(
                f"expected (n, R, C) query images with matching labels, "
                f"got {q_images.shape} and {q_labels.shape}"
            )
        for idx in _class_indices(q_labels):
            if idx.size < per_class_query:
                raise ValueError(
                    f"query class {q_labels[idx[0]]} has {idx.size} members, "
                    f"needs {per_class_query}"
                )
            perm = idx[rng.permutation(idx.size)]
            query_idx.append(perm[:per_class_query])

    tr = np.concatenate(train_idx)
    qr = np.concatenate(query_idx)
    return Dataset(
        train_images=images[tr],
        train_labels=labels[tr],
        query_images=q_images[qr],
        query_labels=q_labels[qr],
        seed=int(seed),
        per_class_train=per_class_train,
        per_class_query=per_class_query,
    )
