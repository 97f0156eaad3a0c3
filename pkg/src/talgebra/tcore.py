"""Order-N complex-array scalars ("t-scalars") and their ring operations.

A t-scalar is a fixed-shape complex array treated as a generalized number:
addition is entry-wise, multiplication is N-way circular convolution, and the
multi-way Fourier transform diagonalizes the whole algebra (the transform of a
product is the entry-wise product of the transforms).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "TShape",
    "TScalar",
    "tscalar",
    "tscalar_zero",
    "tscalar_identity",
    "tscalar_add",
    "tscalar_mul",
    "tscalar_conj",
    "multiway_dft",
    "multiway_idft",
    "linear_index",
    "multi_index",
]


@dataclass(frozen=True)
class TShape:
    """The array shape I1 x ... x IN shared by every t-scalar in a computation.

    ``dims`` may be empty (order 0), which is the degenerate case where the
    algebra collapses to the ordinary complex numbers.  Multi-indices into a
    ``TShape`` are 1-based, matching the convention used throughout this
    package; the canonical linear order of multi-indices is row-major with the
    last index varying fastest.
    """

    dims: tuple[int, ...]

    def __init__(self, dims=()):
        if isinstance(dims, TShape):
            dims = dims.dims
        dims = tuple(int(d) for d in dims)
        if any(d < 1 for d in dims):
            raise ValueError(f"all extents must be >= 1, got {dims}")
        object.__setattr__(self, "dims", dims)

    @property
    def order(self) -> int:
        return len(self.dims)

    def slice_count(self) -> int:
        return math.prod(self.dims)

    def center(self) -> tuple[int, ...]:
        """1-based central multi-index ((I1+1)/2, ..., (IN+1)/2); extents must be odd."""
        if any(d % 2 == 0 for d in self.dims):
            raise ValueError(f"central index needs odd extents, got {self.dims}")
        return tuple((d + 1) // 2 for d in self.dims)

    def validate_index(self, idx) -> tuple[int, ...]:
        """Check a 1-based multi-index against this shape and return it as a tuple."""
        idx = tuple(int(i) for i in idx)
        if len(idx) != self.order:
            raise ValueError(f"index {idx} has {len(idx)} components, shape has order {self.order}")
        for i, d in zip(idx, self.dims):
            if not 1 <= i <= d:
                raise ValueError(f"index {idx} out of bounds for shape {self.dims}")
        return idx

    def __iter__(self):
        return iter(self.dims)

    def __len__(self):
        return len(self.dims)

    def __repr__(self):
        return f"TShape{self.dims}"


def linear_index(shape: TShape, idx) -> int:
    """0-based position of a 1-based multi-index in the canonical linear order."""
    shape = TShape(shape)
    idx = shape.validate_index(idx)
    if shape.order == 0:
        return 0
    zero_based = tuple(i - 1 for i in idx)
    return int(np.ravel_multi_index(zero_based, shape.dims))


def multi_index(shape: TShape, k: int) -> tuple[int, ...]:
    """Inverse of :func:`linear_index`: 1-based multi-index at linear position ``k``."""
    shape = TShape(shape)
    if not 0 <= k < shape.slice_count():
        raise ValueError(f"linear index {k} out of range for shape {shape.dims}")
    if shape.order == 0:
        return ()
    return tuple(int(i) + 1 for i in np.unravel_index(k, shape.dims))


def _as_complex(data) -> np.ndarray:
    arr = np.asarray(data)
    if np.iscomplexobj(arr):
        return arr
    if arr.dtype == np.float32:
        return arr.astype(np.complex64)
    return arr.astype(np.complex128)


class TScalar:
    """A single t-scalar: an order-N complex array of fixed shape.

    Arithmetic between t-scalars requires identical shapes.  ``a * b`` is the
    N-way circular convolution, not the entry-wise product.
    """

    __slots__ = ("data",)

    def __init__(self, data, copy: bool = True):
        arr = _as_complex(data)
        if copy:
            arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    def __setattr__(self, name, value):
        raise AttributeError("TScalar is immutable")

    @property
    def shape(self) -> TShape:
        return TShape(self.data.shape)

    def conj(self) -> "TScalar":
        return tscalar_conj(self)

    def __add__(self, other):
        return tscalar_add(self, other)

    def __sub__(self, other):
        return tscalar_add(self, TScalar(-other.data, copy=False))

    def __mul__(self, other):
        if isinstance(other, TScalar):
            return tscalar_mul(self, other)
        return TScalar(self.data * other, copy=False)

    def __rmul__(self, other):
        return TScalar(other * self.data, copy=False)

    def __neg__(self):
        return TScalar(-self.data, copy=False)

    def __eq__(self, other):
        return isinstance(other, TScalar) and np.array_equal(self.data, other.data)

    def __repr__(self):
        return f"TScalar(shape={self.data.shape}, data={self.data!r})"


def tscalar(data) -> TScalar:
    """Build a t-scalar from array-like data (real input is promoted to complex)."""
    return TScalar(data)


def _check_same_shape(a: TScalar, b: TScalar):
    if a.data.shape != b.data.shape:
        raise ValueError(f"t-scalar shape mismatch: {a.data.shape} vs {b.data.shape}")


def tscalar_zero(shape: TShape) -> TScalar:
    """The additive identity: all entries zero."""
    shape = TShape(shape)
    return TScalar(np.zeros(shape.dims, dtype=np.complex128), copy=False)


def tscalar_identity(shape: TShape) -> TScalar:
    """The multiplicative identity: 1 at multi-index (1,...,1), 0 elsewhere.

    Under circular convolution this delta acts as the unit, and its multi-way
    Fourier transform is the all-ones array.
    """
    shape = TShape(shape)
    data = np.zeros(shape.dims, dtype=np.complex128)
    data[(0,) * shape.order] = 1.0
    return TScalar(data, copy=False)


def tscalar_add(a: TScalar, b: TScalar) -> TScalar:
    """Entry-wise sum of two same-shape t-scalars."""
    _check_same_shape(a, b)
    return TScalar(a.data + b.data, copy=False)


def tscalar_mul(a: TScalar, b: TScalar) -> TScalar:
    """N-way circular convolution of two same-shape t-scalars.

    c(i1,...,iN) = sum over (j1,...,jN) of a(j) * b(i - j mod extents), which
    the transform turns into an entry-wise product.  Commutative, associative,
    and distributive over addition.
    """
    _check_same_shape(a, b)
    if a.data.ndim == 0:
        return TScalar(a.data * b.data, copy=False)
    axes = tuple(range(a.data.ndim))
    prod = np.fft.ifftn(np.fft.fftn(a.data, axes=axes) * np.fft.fftn(b.data, axes=axes), axes=axes)
    return TScalar(prod, copy=False)


def _conj_reverse(data: np.ndarray, axes) -> np.ndarray:
    # circular reversal i -> (-i) mod I on each axis = flip then roll by one
    out = np.conj(data)
    for ax in axes:
        if data.shape[ax] > 1:
            out = np.roll(np.flip(out, axis=ax), 1, axis=ax)
    return out


def tscalar_conj(a: TScalar) -> TScalar:
    """Conjugate of a t-scalar.

    Defined so that the transform of the result is the entry-wise complex
    conjugate of the transform of ``a``; in the spatial domain this is complex
    conjugation combined with circular index reversal on every axis.
    """
    return TScalar(_conj_reverse(a.data, range(a.data.ndim)), copy=False)


def multiway_dft(a: TScalar) -> TScalar:
    """Unnormalized forward N-dimensional DFT over all axes of a t-scalar."""
    if a.data.ndim == 0:
        return TScalar(a.data)
    return TScalar(np.fft.fftn(a.data, axes=tuple(range(a.data.ndim))), copy=False)


def multiway_idft(a: TScalar) -> TScalar:
    """Inverse of :func:`multiway_dft` (scaled by 1 / (I1 * ... * IN))."""
    if a.data.ndim == 0:
        return TScalar(a.data)
    return TScalar(np.fft.ifftn(a.data, axes=tuple(range(a.data.ndim))), copy=False)
