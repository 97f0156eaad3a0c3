"""Principal component analysis, canonical and over the t-scalar algebra.

The tensorial variant fits one canonical PCA per Fourier slice: training
t-vectors are transformed once, then every multi-index gets its own mean,
covariance and eigenbasis.  Features and reconstructions are computed
slice-wise and transformed back.  With the trivial t-scalar shape the whole
machinery collapses to ordinary PCA.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._parallel import map_slice_ranges
from .tcore import TShape
from .tmat import TMatrix, TVector

__all__ = [
    "PcaModel",
    "TpcaModel",
    "pca_fit",
    "pca_transform",
    "pca_reconstruct",
    "tpca_fit",
    "tpca_transform",
    "tpca_reconstruct",
    "save_model",
    "load_model",
]

MODEL_FORMAT_VERSION = 1
# reconstructions of real data may carry round-off in the imaginary part;
# anything below this relative level is dropped
IMAG_DROP_RTOL = 1e-6


@dataclass(frozen=True)
class PcaModel:
    """Mean, orthonormal basis (columns, descending eigenvalue order) and eigenvalues."""

    mean: np.ndarray
    basis: np.ndarray
    eigenvalues: np.ndarray

    @property
    def dim(self) -> int:
        return self.mean.shape[0]


@dataclass(frozen=True)
class TpcaModel:
    """Per-slice PCA models sharing one t-scalar shape.

    ``means[k]``, ``bases[k]`` and ``eigenvalues[k]`` belong to the k-th
    Fourier slice in canonical multi-index order.
    """

    tshape: TShape
    dim: int
    count: int
    means: np.ndarray        # (K_slice, D) complex
    bases: np.ndarray        # (K_slice, D, D) complex, columns descending
    eigenvalues: np.ndarray  # (K_slice, D) real, descending

    @property
    def slice_count(self) -> int:
        return self.tshape.slice_count()

    def mean_tvector(self) -> TVector:
        """The training mean as a spatial t-vector."""
        data = self.means.reshape(self.tshape.dims + (self.dim, 1))
        if self.tshape.order > 0:
            data = np.fft.ifftn(data, axes=tuple(range(self.tshape.order)))
        return TMatrix(data, self.tshape, copy=False)


def _sorted_eig_desc(cov: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # descending eigenvalues, stable on the original index at exact ties;
    # small negatives from round-off are clamped to zero
    w, v = np.linalg.eigh(cov)
    order = np.argsort(-w, axis=-1, kind="stable")
    w = np.take_along_axis(w, order, axis=-1)
    v = np.take_along_axis(v, order[..., None, :], axis=-1)
    norms = np.linalg.norm(cov, axis=(-2, -1))
    clamp = -1e-8 * np.asarray(norms)[..., None]
    w = np.where((w < 0) & (w >= clamp), 0.0, w)
    return w, v


def _fit_slice_block(chunk: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """PCA per leading index of a (B, K, D) block: (means, bases, eigenvalues)."""
    k = chunk.shape[1]
    mean = chunk.mean(axis=1)
    xc = chunk - mean[:, None, :]
    cov = np.matmul(xc.transpose(0, 2, 1), xc.conj()) / (k - 1)
    w, v = _sorted_eig_desc(cov)
    return mean, v, w


def pca_fit(train) -> PcaModel:
    """Fit canonical PCA on K >= 2 equal-length real vectors.

    The covariance uses the unbiased 1/(K-1) normalization; the basis columns
    are its eigenvectors in descending eigenvalue order.
    """
    x = np.asarray(train, dtype=np.float64)
    if x.ndim != 2:
        raise ValueError(f"expected a K x D array of training vectors, got shape {x.shape}")
    k = x.shape[0]
    if k < 2:
        raise ValueError(f"PCA needs at least 2 training vectors, got {k}")
    mean = x.mean(axis=0)
    xc = x - mean
    cov = (xc.T @ xc) / (k - 1)
    w, v = _sorted_eig_desc(cov)
    return PcaModel(mean=mean, basis=v, eigenvalues=w)


def pca_transform(model: PcaModel, y) -> np.ndarray:
    """Full-length feature vector: basis^T applied to the centered input."""
    y = np.asarray(y, dtype=np.float64)
    if y.shape != (model.dim,):
        raise ValueError(f"expected a length-{model.dim} vector, got shape {y.shape}")
    return model.basis.T @ (y - model.mean)


def pca_reconstruct(model: PcaModel, feature, d: int) -> np.ndarray:
    """Reconstruction from the first ``d`` feature entries and basis columns."""
    feature = np.asarray(feature, dtype=np.float64)
    if feature.shape != (model.dim,):
        raise ValueError(f"expected a length-{model.dim} feature, got shape {feature.shape}")
    if not 1 <= d <= model.dim:
        raise ValueError(f"feature dimension d={d} outside [1, {model.dim}]")
    return model.basis[:, :d] @ feature[:d] + model.mean


def _tvector_slices(v: TMatrix) -> np.ndarray:
    """Fourier slices of a t-vector as a (K_slice, D) array."""
    n = v.tshape.order
    data = v.data[..., 0]
    if n > 0:
        data = np.fft.fftn(data, axes=tuple(range(n)))
    return np.asarray(data, dtype=np.result_type(data.dtype, np.complex64)).reshape(
        v.tshape.slice_count(), v.rows
    )


def _tvector_from_slices(slices: np.ndarray, tshape: TShape) -> TMatrix:
    data = slices.reshape(tshape.dims + (slices.shape[-1], 1))
    if tshape.order > 0:
        data = np.fft.ifftn(data, axes=tuple(range(tshape.order)))
    return TMatrix(data, tshape, copy=False)


def _check_tvector(v: TMatrix, tshape: TShape, dim: int, what: str):
    if not isinstance(v, TMatrix):
        raise TypeError(f"{what} must be a t-vector (one-column TMatrix)")
    if v.cols != 1:
        raise ValueError(f"{what} must have one column, got {v.cols}")
    if v.tshape != tshape or v.rows != dim:
        raise ValueError(
            f"{what} has t-shape {v.tshape.dims} and length {v.rows}, "
            f"expected {tshape.dims} and {dim}"
        )


def tpca_fit(train, parallelism: int | None = None) -> TpcaModel:
    """Fit one PCA per Fourier slice from K >= 2 training t-vectors.

    Parameters
    ----------
    train : sequence of TVector
        One-column t-matrices of identical t-shape and length.  Each is
        transformed exactly once; the transformed stack is kept in the
        precision of the input data.
    parallelism : int, optional
        Worker threads across slices; results do not depend on it.
    """
    train = list(train)
    k = len(train)
    if k < 2:
        raise ValueError(f"TPCA needs at least 2 training t-vectors, got {k}")
    tshape = train[0].tshape if isinstance(train[0], TMatrix) else None
    dim = train[0].rows if tshape is not None else None
    for v in train:
        _check_tvector(v, tshape, dim, "training t-vector")

    k_slice = tshape.slice_count()
    cdtype = np.result_type(*(v.data.dtype for v in train), np.complex64)
    # slice-major so each worker reads a contiguous block per slice range
    stack = np.empty((k_slice, k, dim), dtype=cdtype)
    for i, v in enumerate(train):
        stack[:, i, :] = _tvector_slices(v)

    means = np.empty((k_slice, dim), dtype=cdtype)
    bases = np.empty((k_slice, dim, dim), dtype=cdtype)
    eigenvalues = np.empty((k_slice, dim), dtype=np.float64)

    def work(lo, hi):
        mean, v, w = _fit_slice_block(stack[lo:hi])
        means[lo:hi] = mean
        bases[lo:hi] = v
        eigenvalues[lo:hi] = w

    map_slice_ranges(work, k_slice, parallelism)
    for arr in (means, bases, eigenvalues):
        arr.setflags(write=False)
    return TpcaModel(
        tshape=tshape, dim=dim, count=k, means=means, bases=bases, eigenvalues=eigenvalues
    )


def tpca_transform(model: TpcaModel, y: TVector) -> TVector:
    """Full-length feature t-vector, computed slice-wise then transformed back."""
    _check_tvector(y, model.tshape, model.dim, "query t-vector")
    ytil = _tvector_slices(y)
    centered = ytil - model.means
    feat = np.matmul(model.bases.conj().transpose(0, 2, 1), centered[:, :, None])[..., 0]
    return _tvector_from_slices(feat, model.tshape)


def tpca_reconstruct(model: TpcaModel, feature: TVector, d: int) -> TVector:
    """Slice-wise reconstruction from the first ``d`` basis columns.

    For real training and query data the imaginary part of the result is
    round-off; it is dropped when its largest magnitude is below 1e-6 of the
    reconstruction's Frobenius norm, yielding a real t-vector.
    """
    _check_tvector(feature, model.tshape, model.dim, "feature t-vector")
    if not 1 <= d <= model.dim:
        raise ValueError(f"feature dimension d={d} outside [1, {model.dim}]")
    ftil = _tvector_slices(feature)
    rec = np.matmul(model.bases[:, :, :d], ftil[:, :d, None])[..., 0] + model.means
    out = _tvector_from_slices(rec, model.tshape)
    return _drop_negligible_imag(out)


def _drop_negligible_imag(v: TMatrix) -> TMatrix:
    data = v.data
    if not np.iscomplexobj(data):
        return v
    scale = np.linalg.norm(data)
    if scale == 0 or np.abs(data.imag).max() <= IMAG_DROP_RTOL * scale:
        return TMatrix(np.ascontiguousarray(data.real), v.tshape, copy=False)
    return v


def save_model(model: TpcaModel, path) -> None:
    """Write a fitted model to a single ``.npz`` file (format version 1).

    Arrays stored: ``dims``, ``dim``, ``count``, ``means``, ``bases``,
    ``eigenvalues``, plus a ``format_version`` header field.
    """
    np.savez(
        path,
        format_version=np.int64(MODEL_FORMAT_VERSION),
        dims=np.asarray(model.tshape.dims, dtype=np.int64),
        dim=np.int64(model.dim),
        count=np.int64(model.count),
        means=model.means,
        bases=model.bases,
        eigenvalues=model.eigenvalues,
    )


def load_model(path) -> TpcaModel:
    """Read a model written by :func:`save_model`."""
    with np.load(path) as f:
        version = int(f["format_version"])
        if version != MODEL_FORMAT_VERSION:
            raise ValueError(f"unsupported model format version {version}")
        means = f["means"]
        bases = f["bases"]
        eigenvalues = f["eigenvalues"]
        for arr in (means, bases, eigenvalues):
            arr.setflags(write=False)
        return TpcaModel(
            tshape=TShape(tuple(int(d) for d in f["dims"])),
            dim=int(f["dim"]),
            count=int(f["count"]),
            means=means,
            bases=bases,
            eigenvalues=eigenvalues,
        )
