"""Matrices over the t-scalar algebra and their Fourier-slice decomposition.

A t-matrix is a D1 x D2 matrix whose entries are t-scalars of one shared
shape, stored as a single order-(N+2) complex array with the t-scalar axes
first: ``data[i1-1, ..., iN-1, d1, d2]``.  A t-vector is simply a t-matrix
with one column.

Transforming every entry and regrouping by multi-index yields ``K_slice``
ordinary complex D1 x D2 matrices (the Fourier slices).  T-matrix
multiplication, conjugate transposition and the Hermitian TSVD all decompose
into independent canonical operations on those slices, which is how the heavy
routines here are implemented.
"""

from __future__ import annotations

import numpy as np

from ._parallel import map_slice_ranges
from .tcore import TShape, TScalar, _conj_reverse

__all__ = [
    "TMatrix",
    "TVector",
    "FourierStack",
    "NotHermitianError",
    "tmat_zero",
    "tmat_identity",
    "tmat_add",
    "tmat_mul",
    "tmat_conj_transpose",
    "to_fourier_stack",
    "from_fourier_stack",
    "tsvd_hermitian",
]

HERMITIAN_RTOL = 1e-8
EIGENVALUE_CLAMP_RTOL = 1e-8


class NotHermitianError(ArithmeticError):
    """A Fourier slice deviates from Hermitian symmetry beyond tolerance."""


class TMatrix:
    """A D1 x D2 matrix of t-scalars, stored as one array of shape dims + (D1, D2).

    Real storage is allowed and is treated as complex with zero imaginary part
    (the transform promotes it); this halves memory for image-valued data.
    Instances are immutable after construction.
    """

    __slots__ = ("data", "tshape")

    def __init__(self, data, tshape: TShape | None = None, copy: bool = True):
        arr = np.asarray(data)
        if not np.issubdtype(arr.dtype, np.number):
            arr = arr.astype(np.float64)
        if arr.ndim < 2:
            raise ValueError(f"t-matrix data needs at least 2 axes, got shape {arr.shape}")
        if arr.shape[-2] < 1 or arr.shape[-1] < 1:
            raise ValueError(f"matrix extents must be >= 1, got {arr.shape[-2]}x{arr.shape[-1]}")
        if tshape is None:
            tshape = TShape(arr.shape[:-2])
        else:
            tshape = TShape(tshape)
            if arr.shape[: tshape.order] != tshape.dims or arr.ndim != tshape.order + 2:
                raise ValueError(
                    f"data shape {arr.shape} does not match t-shape {tshape.dims} + (D1, D2)"
                )
        if copy:
            arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)
        object.__setattr__(self, "tshape", tshape)

    def __setattr__(self, name, value):
        raise AttributeError("TMatrix is immutable")

    @property
    def rows(self) -> int:
        return self.data.shape[-2]

    @property
    def cols(self) -> int:
        return self.data.shape[-1]

    def entry(self, d1: int, d2: int) -> TScalar:
        """The t-scalar at 0-based matrix position (d1, d2)."""
        return TScalar(self.data[..., d1, d2])

    def astype(self, dtype) -> "TMatrix":
        return TMatrix(self.data.astype(dtype), self.tshape, copy=False)

    def __add__(self, other):
        return tmat_add(self, other)

    def __sub__(self, other):
        _check_compatible_add(self, other)
        return TMatrix(self.data - other.data, self.tshape, copy=False)

    def __matmul__(self, other):
        return tmat_mul(self, other)

    def __repr__(self):
        return f"TMatrix(tshape={self.tshape.dims}, rows={self.rows}, cols={self.cols})"


# A t-vector is a one-column t-matrix; the alias is purely documentary.
TVector = TMatrix


class FourierStack:
    """The K_slice complex D1 x D2 matrices of a transformed t-matrix.

    ``slices[k]`` is the matrix at the k-th multi-index in canonical linear
    order (last index fastest).
    """

    __slots__ = ("slices", "tshape")

    def __init__(self, slices, tshape: TShape, copy: bool = True):
        tshape = TShape(tshape)
        arr = np.asarray(slices)
        if arr.ndim != 3 or arr.shape[0] != tshape.slice_count():
            raise ValueError(
                f"expected {tshape.slice_count()} slices of a D1 x D2 matrix, got shape {arr.shape}"
            )
        if copy:
            arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "slices", arr)
        object.__setattr__(self, "tshape", tshape)

    def __setattr__(self, name, value):
        raise AttributeError("FourierStack is immutable")

    @property
    def rows(self) -> int:
        return self.slices.shape[1]

    @property
    def cols(self) -> int:
        return self.slices.shape[2]

    def slice_at(self, idx) -> np.ndarray:
        """Slice at a 1-based multi-index."""
        from .tcore import linear_index

        return self.slices[linear_index(self.tshape, idx)]

    def __repr__(self):
        return (
            f"FourierStack(tshape={self.tshape.dims}, slices={self.slices.shape[0]}, "
            f"rows={self.rows}, cols={self.cols})"
        )


def _check_compatible_add(a: TMatrix, b: TMatrix):
    if a.tshape != b.tshape or a.rows != b.rows or a.cols != b.cols:
        raise ValueError(
            f"t-matrix mismatch: {a.tshape.dims}/{a.rows}x{a.cols} vs "
            f"{b.tshape.dims}/{b.rows}x{b.cols}"
        )


def tmat_zero(shape: TShape, rows: int, cols: int) -> TMatrix:
    shape = TShape(shape)
    if rows < 1 or cols < 1:
        raise ValueError(f"matrix extents must be >= 1, got {rows}x{cols}")
    return TMatrix(np.zeros(shape.dims + (rows, cols), dtype=np.complex128), shape, copy=False)


def tmat_identity(shape: TShape, d: int) -> TMatrix:
    """D x D t-matrix with identity t-scalars on the diagonal, zero elsewhere."""
    shape = TShape(shape)
    if d < 1:
        raise ValueError(f"identity size must be >= 1, got {d}")
    data = np.zeros(shape.dims + (d, d), dtype=np.complex128)
    data[(0,) * shape.order] = np.eye(d)
    return TMatrix(data, shape, copy=False)


def tmat_add(a: TMatrix, b: TMatrix) -> TMatrix:
    """Entry-wise t-scalar addition."""
    _check_compatible_add(a, b)
    return TMatrix(a.data + b.data, a.tshape, copy=False)


def to_fourier_stack(a: TMatrix) -> FourierStack:
    """Transform every t-scalar entry and regroup by multi-index.

    Entry (d1, d2) of the slice at multi-index (i1,...,iN) equals component
    (i1,...,iN) of the transformed entry (d1, d2) of ``a``.
    """
    n = a.tshape.order
    if n == 0:
        tilde = np.asarray(a.data, dtype=np.result_type(a.data.dtype, np.complex64))
    else:
        tilde = np.fft.fftn(a.data, axes=tuple(range(n)))
    k = a.tshape.slice_count()
    return FourierStack(tilde.reshape(k, a.rows, a.cols), a.tshape, copy=False)


def from_fourier_stack(s: FourierStack) -> TMatrix:
    """Inverse of :func:`to_fourier_stack`."""
    n = s.tshape.order
    data = s.slices.reshape(s.tshape.dims + (s.rows, s.cols))
    if n > 0:
        data = np.fft.ifftn(data, axes=tuple(range(n)))
    return TMatrix(data, s.tshape, copy=False)


def tmat_mul(a: TMatrix, b: TMatrix) -> TMatrix:
    """T-matrix product: t-scalar dot products of rows with columns.

    Computed slice-wise; each Fourier slice of the product is the canonical
    matrix product of the corresponding slices of ``a`` and ``b``.
    """
    if a.tshape != b.tshape:
        raise ValueError(f"t-shape mismatch: {a.tshape.dims} vs {b.tshape.dims}")
    if a.cols != b.rows:
        raise ValueError(f"inner dimensions differ: {a.rows}x{a.cols} @ {b.rows}x{b.cols}")
    sa = to_fourier_stack(a).slices
    sb = to_fourier_stack(b).slices
    return from_fourier_stack(FourierStack(np.matmul(sa, sb), a.tshape, copy=False))


def tmat_conj_transpose(a: TMatrix) -> TMatrix:
    """Conjugate transpose: swap matrix axes and conjugate every t-scalar entry.

    Each Fourier slice of the result is the Hermitian transpose of the
    corresponding slice of ``a``.
    """
    data = _conj_reverse(a.data, range(a.tshape.order)).swapaxes(-1, -2)
    return TMatrix(data, a.tshape, copy=False)


def tsvd_hermitian(g: TMatrix, parallelism: int | None = None) -> tuple[TMatrix, TMatrix]:
    """Decompose a Hermitian positive-semidefinite t-matrix as U o S o U*.

    Parameters
    ----------
    g : TMatrix
        Square t-matrix whose Fourier slices are Hermitian PSD within a
        relative tolerance of 1e-8 (covariance t-matrices are, by
        construction).
    parallelism : int, optional
        Worker threads across Fourier slices; the result is independent of it.

    Returns
    -------
    (u, s) : tuple of TMatrix
        Per slice, ``u`` holds an orthonormal eigenbasis (columns) and ``s``
        the real eigenvalues on the diagonal, sorted descending with stable
        tie-breaking on the original index.  Eigenvalues within
        ``-1e-8 * ||slice||_F`` of zero are clamped to exactly 0.

    Raises
    ------
    ValueError
        If ``g`` is not square.
    NotHermitianError
        If some slice deviates from Hermitian symmetry beyond tolerance.

    Notes
    -----
    Eigenvector phase is arbitrary; when consecutive eigenvalues of a slice
    coincide, any orthonormal basis of the degenerate block may be returned.
    Downstream uses are phase-invariant.
    """
    if g.rows != g.cols:
        raise ValueError(f"TSVD needs a square t-matrix, got {g.rows}x{g.cols}")
    slices = to_fourier_stack(g).slices
    k, d, _ = slices.shape
    u_out = np.empty_like(slices)
    s_out = np.zeros_like(slices)

    def work(lo, hi):
        chunk = slices[lo:hi]
        herm_defect = np.linalg.norm(chunk - chunk.conj().swapaxes(-1, -2), axis=(-2, -1))
        norms = np.linalg.norm(chunk, axis=(-2, -1))
        bad = herm_defect > HERMITIAN_RTOL * np.maximum(norms, 1.0)
        if np.any(bad):
            j = lo + int(np.argmax(bad))
            raise NotHermitianError(
                f"Fourier slice {j} deviates from Hermitian symmetry "
                f"(defect {herm_defect[int(np.argmax(bad))]:.3e})"
            )
        w, v = np.linalg.eigh(chunk)
        order = np.argsort(-w, axis=-1, kind="stable")
        w = np.take_along_axis(w, order, axis=-1)
        v = np.take_along_axis(v, order[:, None, :], axis=-1)
        clamp = -EIGENVALUE_CLAMP_RTOL * norms[:, None]
        w = np.where((w < 0) & (w >= clamp), 0.0, w)
        u_out[lo:hi] = v
        for i in range(hi - lo):
            np.fill_diagonal(s_out[lo + i], w[i])

    map_slice_ranges(work, k, parallelism)
    u = from_fourier_stack(FourierStack(u_out, g.tshape, copy=False))
    s = from_fourier_stack(FourierStack(s_out, g.tshape, copy=False))
    return u, s
