"""Compound images: pixels extended to t-scalar neighborhoods.

Two extension strategies, both centered on the source pixel and zero-padded
at the borders:

* strategy 1 nests 3x3 neighborhoods, doubling the t-scalar order per reuse
  (shapes 3x3, 3x3x3x3, ...).  Every read, at every nesting level, indexes
  the original image extended by zeros on an infinite plane, so an entry
  depends only on its summed row and column offsets.
* strategy 2 grows one w x w window (w odd), keeping order 2.

A compound image is an R x C t-matrix; it can be recast to a t-vector in
column-major raster order and sliced back into ordinary vectors per
multi-index.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .tcore import TShape
from .tmat import TMatrix, TVector

__all__ = [
    "CompoundImage",
    "strategy1_extend",
    "strategy2_extend",
    "image_to_tvector",
    "tvector_to_image",
    "raster_vector",
    "raster_image",
    "spatial_slice",
    "central_spatial_slice",
]


def _as_image(img) -> np.ndarray:
    arr = np.asarray(img)
    if arr.ndim != 2 or arr.size == 0:
        raise ValueError(f"expected a nonempty 2-d image, got shape {arr.shape}")
    if arr.dtype not in (np.float32, np.float64):
        arr = arr.astype(np.float64)
    return arr


@dataclass(frozen=True)
class CompoundImage:
    """An R x C t-matrix of compound pixels plus the strategy that built it."""

    tmatrix: TMatrix
    strategy: str   # "strategy1" or "strategy2"
    parameter: int  # reuses or window size

    @property
    def rows(self) -> int:
        return self.tmatrix.rows

    @property
    def cols(self) -> int:
        return self.tmatrix.cols

    @property
    def tshape(self) -> TShape:
        return self.tmatrix.tshape


def strategy1_extend(img, reuses: int) -> CompoundImage:
    """Extend pixels by ``reuses`` nested 3x3 neighborhoods (t-shape order 2*reuses).

    The entry of the compound pixel at (r, c) with multi-index
    (i1, j1, ..., ik, jk) is the image value at row r + sum(ik - 2) and
    column c + sum(jk - 2), zero outside the image.
    """
    if reuses < 1:
        raise ValueError(f"reuses must be >= 1, got {reuses}")
    arr = _as_image(img)
    k = int(reuses)
    rows, cols = arr.shape
    padded = np.zeros((rows + 2 * k, cols + 2 * k), dtype=arr.dtype)
    padded[k:-k, k:-k] = arr
    core = sliding_window_view(padded, (2 * k + 1, 2 * k + 1)).transpose(2, 3, 0, 1)
    # gather by summed offsets, then interleave (i1,...,ik,j1,...,jk) -> (i1,j1,...)
    s = np.indices((3,) * k).sum(axis=0)
    data = core[s.reshape(s.shape + (1,) * k), s.reshape((1,) * k + s.shape)]
    perm = [ax for pair in zip(range(k), range(k, 2 * k)) for ax in pair]
    data = np.ascontiguousarray(data.transpose(perm + [2 * k, 2 * k + 1]))
    return CompoundImage(
        tmatrix=TMatrix(data, TShape((3,) * (2 * k)), copy=False),
        strategy="strategy1",
        parameter=k,
    )


def strategy2_extend(img, window: int) -> CompoundImage:
    """Extend pixels to their w x w neighborhood (t-shape (w, w), w odd >= 3)."""
    w = int(window)
    if w < 3 or w % 2 == 0:
        raise ValueError(f"window must be odd and >= 3, got {window}")
    arr = _as_image(img)
    h = w // 2
    rows, cols = arr.shape
    padded = np.zeros((rows + 2 * h, cols + 2 * h), dtype=arr.dtype)
    padded[h:-h, h:-h] = arr
    data = np.ascontiguousarray(sliding_window_view(padded, (w, w)).transpose(2, 3, 0, 1))
    return CompoundImage(
        tmatrix=TMatrix(data, TShape((w, w)), copy=False),
        strategy="strategy2",
        parameter=w,
    )


def _tmatrix_of(cimg) -> TMatrix:
    return cimg.tmatrix if isinstance(cimg, CompoundImage) else cimg


def image_to_tvector(cimg) -> TVector:
    """Recast an R x C compound image to a length R*C t-vector.

    Column-major raster order: entry d (1-based) is the compound pixel at
    row r, column c with d - 1 = (c - 1) * R + (r - 1).  Inverse:
    :func:`tvector_to_image`.
    """
    m = _tmatrix_of(cimg)
    rows, cols = m.rows, m.cols
    data = np.swapaxes(m.data, -1, -2).reshape(m.tshape.dims + (rows * cols, 1))
    return TMatrix(np.ascontiguousarray(data), m.tshape, copy=False)


def tvector_to_image(x: TVector, rows: int, cols: int) -> TMatrix:
    """Undo :func:`image_to_tvector`; returns the R x C t-matrix."""
    if x.cols != 1:
        raise ValueError(f"expected a one-column t-vector, got {x.cols} columns")
    if rows * cols != x.rows:
        raise ValueError(f"{rows}x{cols} does not match t-vector length {x.rows}")
    data = np.swapaxes(x.data.reshape(x.tshape.dims + (cols, rows)), -1, -2)
    return TMatrix(np.ascontiguousarray(data), x.tshape, copy=False)


def raster_vector(img) -> np.ndarray:
    """Column-major vectorization of a plain image; the PCA-side counterpart
    of :func:`image_to_tvector`."""
    arr = _as_image(img)
    return np.ascontiguousarray(arr.T).reshape(arr.size)


def raster_image(vec, rows: int, cols: int) -> np.ndarray:
    """Undo :func:`raster_vector`."""
    vec = np.asarray(vec)
    if vec.shape != (rows * cols,):
        raise ValueError(f"expected a length-{rows * cols} vector, got shape {vec.shape}")
    return np.ascontiguousarray(vec.reshape(cols, rows).T)


def spatial_slice(x: TVector, idx) -> np.ndarray:
    """Gather component ``idx`` (1-based multi-index) of every t-scalar entry."""
    if x.cols != 1:
        raise ValueError(f"expected a one-column t-vector, got {x.cols} columns")
    x.tshape.validate_index(idx)
    pos = tuple(i - 1 for i in idx)
    return np.ascontiguousarray(x.data[pos + (slice(None), 0)])


def central_spatial_slice(x: TVector) -> np.ndarray:
    """Spatial slice at the central multi-index ((I1+1)/2, ..., (IN+1)/2).

    Requires all extents odd.  For a compound image built by either strategy
    this recovers the raster vector of the source image exactly.
    """
    return spatial_slice(x, x.tshape.center())
