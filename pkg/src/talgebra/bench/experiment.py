"""The benchmark run: fit, reconstruct at each d, PSNR against the originals.

Memory discipline matters more than speed here.  TPCA over large t-scalar
shapes never materializes a full model: training and query t-vectors are
transformed once into slice-major stacks, then fixed-size batches of Fourier
slices are fitted, transformed and reconstructed in one pass, accumulating
each slice's weighted contribution to the central spatial slice of the
reconstruction.  Stacks above a size threshold go to on-disk scratch files.
The batch partition and the accumulation order are fixed, so results do not
depend on the parallelism degree.
"""

from __future__ import annotations

import math
import os
import tempfile
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .._parallel import resolve_parallelism
from ..compound import raster_image, raster_vector
from ..tpca import _fit_slice_block, _tvector_slices
from ..tpca import pca_fit, pca_reconstruct, pca_transform
from .dataset import Dataset
from .variants import ALL_VARIANTS, VariantSpec, variant_tvector

__all__ = ["DEFAULT_DIMS", "PsnrReport", "run_experiment", "reconstruct_images"]

DEFAULT_DIMS = list(range(50, 501, 50))
MAX_VALUE = 255.0
# slice stacks larger than this spill to disk scratch files
MEMMAP_LIMIT_BYTES = 1 << 30
# per-batch workspace target; sets the number of slices fitted at once
BATCH_BUDGET_BYTES = 192 << 20

_DTYPES = {"c64": np.complex64, "c128": np.complex128}


@dataclass
class PsnrReport:
    """Aggregate and per-image PSNRs for every (variant, d) cell.

    ``aggregate_db[name][d]`` covers the stacked (R*C) x n_query arrays;
    ``per_image_db[name][d]`` holds one PSNR per query image (D = R*C).
    A variant run on a reduced query set keeps its own, shorter array.
    """

    variant_names: list[str]
    dims: list[int]
    aggregate_db: dict[str, dict[int, float]] = field(default_factory=dict)
    per_image_db: dict[str, dict[int, np.ndarray]] = field(default_factory=dict)
    query_count: int = 0
    pixel_count: int = 0

    def reference_variant(self) -> str:
        """Sort key for per-image charts: PCA when present, else the first
        variant covering the full query set."""
        full = [
            n
            for n in self.variant_names
            if len(self.per_image_db[n][self.dims[0]]) == self.query_count
        ]
        if not full:
            raise ValueError("no variant covers the full query set")
        return "PCA" if "PCA" in full else full[0]

    def sort_order(self, d: int) -> np.ndarray:
        """Query indices by ascending reference-variant PSNR at d (stable)."""
        return np.argsort(self.per_image_db[self.reference_variant()][d], kind="stable")


def _psnr_scalar(sq_err: float, count: int) -> float:
    if sq_err == 0.0:
        return math.inf
    return 20.0 * math.log10(MAX_VALUE * math.sqrt(count) / math.sqrt(sq_err))


def _psnr_vector(sq_err: np.ndarray, count: int) -> np.ndarray:
    out = np.full(sq_err.shape, np.inf)
    nz = sq_err > 0
    out[nz] = 20.0 * np.log10(MAX_VALUE * math.sqrt(count) / np.sqrt(sq_err[nz]))
    return out


def _central_weights(tshape) -> np.ndarray:
    """Weights w with x[center] = sum_k w[k] * X[k] over Fourier slices k."""
    if tshape.order == 0:
        return np.ones(1, dtype=np.complex128)
    c0 = tuple(c - 1 for c in tshape.center())
    phase = np.zeros(tshape.dims)
    for ax, (extent, c) in enumerate(zip(tshape.dims, c0)):
        shape = [1] * tshape.order
        shape[ax] = extent
        phase = phase + (c * np.arange(extent) / extent).reshape(shape)
    return np.exp(2j * np.pi * phase).reshape(-1) / tshape.slice_count()


def _build_slice_stack(images, spec: VariantSpec, cdtype, workdir, tag: str):
    """Transformed t-vectors of all images, slice-major: (K_slice, n, D)."""
    n = len(images)
    k_slice = spec.tshape.slice_count()
    dim = images[0].size
    fdtype = np.float32 if np.dtype(cdtype) == np.complex64 else np.float64
    nbytes = k_slice * n * dim * np.dtype(cdtype).itemsize
    if nbytes > MEMMAP_LIMIT_BYTES:
        path = os.path.join(workdir, f"{tag}.stack")
        stack = np.memmap(path, dtype=cdtype, mode="w+", shape=(k_slice, n, dim))
    else:
        stack = np.empty((k_slice, n, dim), dtype=cdtype)
    for i in range(n):
        stack[:, i, :] = _tvector_slices(variant_tvector(spec, images[i].astype(fdtype)))
    return stack


def _batch_size(k_slice: int, n_train: int, n_query: int, dim: int, itemsize: int) -> int:
    per_slice = itemsize * (3 * dim * dim + (n_train + 3 * n_query) * dim)
    return int(max(1, min(k_slice, BATCH_BUDGET_BYTES // per_slice)))


def _tpca_centrals(
    spec: VariantSpec,
    train_images,
    query_images,
    dims: list[int],
    cdtype,
    parallelism: int | None,
    workdir: str,
) -> np.ndarray:
    """Central spatial slices of query reconstructions: (len(dims), Q, D) real.

    Fuses fit, transform and truncated reconstruction per slice batch; the
    reconstruction telescopes across ascending d, adding only the newly
    retained basis columns.
    """
    n_query = len(query_images)
    dim = train_images[0].size
    k_slice = spec.tshape.slice_count()
    train_stack = _build_slice_stack(train_images, spec, cdtype, workdir, spec.key + "-train")
    query_stack = _build_slice_stack(query_images, spec, cdtype, workdir, spec.key + "-query")
    wts = _central_weights(spec.tshape)

    bsize = _batch_size(k_slice, len(train_images), n_query, dim, np.dtype(cdtype).itemsize)
    batches = [(lo, min(lo + bsize, k_slice)) for lo in range(0, k_slice, bsize)]

    def process(bounds) -> np.ndarray:
        lo, hi = bounds
        mean, u, _ = _fit_slice_block(np.ascontiguousarray(train_stack[lo:hi]))
        qc = np.ascontiguousarray(query_stack[lo:hi]) - mean[:, None, :]
        feat = np.matmul(qc, u.conj())
        rec = np.broadcast_to(mean[:, None, :], qc.shape).astype(cdtype)
        part = np.empty((len(dims), n_query, dim), dtype=np.complex128)
        prev = 0
        for di, d in enumerate(dims):
            if d > prev:
                rec = rec + np.matmul(
                    feat[:, :, prev:d], np.swapaxes(u[:, :, prev:d], -1, -2)
                )
            part[di] = np.einsum("b,bqi->qi", wts[lo:hi], rec)
            prev = d
        return part

    acc = np.zeros((len(dims), n_query, dim), dtype=np.complex128)
    workers = resolve_parallelism(parallelism)
    if workers == 1 or len(batches) == 1:
        for bounds in batches:
            acc += process(bounds)
    else:
        # waves of one batch per worker keep memory bounded while the
        # in-order reduction keeps results independent of the worker count
        with ThreadPoolExecutor(max_workers=workers) as ex:
            for i in range(0, len(batches), workers):
                for part in ex.map(process, batches[i : i + workers]):
                    acc += part
    del train_stack, query_stack
    # real inputs: the imaginary residue is transform round-off
    return np.ascontiguousarray(acc.real)


def _pca_centrals(train_images, query_images, dims: list[int]) -> np.ndarray:
    """The dedicated PCA path on plain raster vectors, same output layout."""
    model = pca_fit([raster_vector(im) for im in train_images])
    out = np.empty((len(dims), len(query_images), model.dim))
    for q, img in enumerate(query_images):
        feat = pca_transform(model, raster_vector(img))
        for di, d in enumerate(dims):
            out[di, q] = pca_reconstruct(model, feat, d)
    return out


def _variant_dtype(spec: VariantSpec, precision: str | None):
    if precision is not None:
        return _DTYPES[precision]
    return np.complex64 if spec.key == "tpca-b" else np.complex128


def _check_dims(dims, pixel_count: int) -> list[int]:
    out = sorted({int(d) for d in dims})
    if not out:
        raise ValueError("no feature dimensions given")
    if out[0] < 1 or out[-1] > pixel_count:
        raise ValueError(f"dims must lie in [1, {pixel_count}], got {out[0]}..{out[-1]}")
    return out


def run_experiment(
    dataset: Dataset,
    variants=None,
    dims=None,
    precision: str | None = None,
    parallelism: int | None = None,
    reduced: bool = False,
    progress=None,
) -> PsnrReport:
    """Score truncated reconstructions of the query images per variant and d.

    For each variant: extend the images per its strategy (plain vectors for
    PCA), fit on the training set, transform each query, reconstruct at each
    d, and take central spatial slices.  PSNRs compare those slices against
    the query raster vectors: per image over D = R*C entries, aggregate over
    the stacked D x n_query array.

    precision None keeps complex128 everywhere except TPCA-B, which defaults
    to complex64 with on-disk slice stacks; "c64"/"c128" force one dtype for
    all variants.  reduced=True runs TPCA-B on a 10+2 per-class subset and
    reports it as "TPCA-B(reduced)" with per-image PSNRs over its own queries
    only.  progress, if given, receives one status line per stage.
    """
    if precision is not None and precision not in _DTYPES:
        raise ValueError(f"precision must be one of {sorted(_DTYPES)}, got {precision!r}")
    specs = list(ALL_VARIANTS) if variants is None else list(variants)
    if len(dataset.train_images) < 2:
        raise ValueError("need at least 2 training images")
    if len(dataset.query_images) < 1:
        raise ValueError("need at least 1 query image")
    pixel_count = int(dataset.train_images[0].size)
    dims = _check_dims(DEFAULT_DIMS if dims is None else dims, pixel_count)

    x_ref_full = np.stack(
        [raster_vector(im.astype(np.float64)) for im in dataset.query_images]
    )
    report = PsnrReport(
        variant_names=[],
        dims=dims,
        query_count=len(dataset.query_images),
        pixel_count=pixel_count,
    )

    workdir = tempfile.TemporaryDirectory(prefix="talgebra-bench-")
    try:
        for spec in specs:
            name = spec.name
            train, query, x_ref = dataset.train_images, dataset.query_images, x_ref_full
            if reduced and spec.key == "tpca-b":
                sub = dataset.subset(
                    min(10, dataset.per_class_train), min(2, dataset.per_class_query)
                )
                train, query = sub.train_images, sub.query_images
                x_ref = np.stack([raster_vector(im.astype(np.float64)) for im in query])
                name = spec.name + "(reduced)"
            cdtype = _variant_dtype(spec, precision)
            if progress:
                progress(
                    f"[{name}] fitting {spec.tshape.slice_count()} slice(s) on "
                    f"{len(train)} images ({np.dtype(cdtype).name})"
                )
            t0 = time.monotonic()
            try:
                if spec.strategy == "none":
                    centrals = _pca_centrals(train, query, dims)
                else:
                    centrals = _tpca_centrals(
                        spec, train, query, dims, cdtype, parallelism, workdir.name
                    )
            except Exception as exc:
                raise RuntimeError(f"variant {name} failed: {exc}") from exc

            report.variant_names.append(name)
            report.aggregate_db[name] = {}
            report.per_image_db[name] = {}
            for di, d in enumerate(dims):
                diff = x_ref - centrals[di]
                sq = np.einsum("qi,qi->q", diff, diff)
                report.per_image_db[name][d] = _psnr_vector(sq, pixel_count)
                report.aggregate_db[name][d] = _psnr_scalar(
                    float(sq.sum()), pixel_count * len(query)
                )
            if progress:
                progress(f"[{name}] done in {time.monotonic() - t0:.1f}s")
    finally:
        workdir.cleanup()
    return report


def reconstruct_images(
    dataset: Dataset,
    spec: VariantSpec,
    d: int,
    image_indices,
    precision: str | None = None,
    parallelism: int | None = None,
) -> np.ndarray:
    """Reconstructions of selected query images at one d, as (n, R, C) arrays.

    Values are the central spatial slices on the 0-255 scale, not yet clipped
    or rounded.
    """
    rows, cols = dataset.image_shape
    image_indices = list(image_indices)
    for i in image_indices:
        if not 0 <= i < len(dataset.query_images):
            raise ValueError(
                f"image index {i} outside [0, {len(dataset.query_images)})"
            )
    query = dataset.query_images[image_indices]
    dims = _check_dims([d], rows * cols)
    cdtype = _variant_dtype(spec, precision)
    if spec.strategy == "none":
        centrals = _pca_centrals(dataset.train_images, query, dims)
    else:
        workdir = tempfile.TemporaryDirectory(prefix="talgebra-recon-")
        try:
            centrals = _tpca_centrals(
                spec, dataset.train_images, query, dims, cdtype, parallelism, workdir.name
            )
        finally:
            workdir.cleanup()
    return np.stack([raster_image(vec, rows, cols) for vec in centrals[0]])
