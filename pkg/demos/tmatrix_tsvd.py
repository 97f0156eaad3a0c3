"""T-matrices are matrices of t-scalars; their products decompose into
independent complex matrix products per Fourier slice.  The slice-wise
eigendecomposition of a Hermitian t-matrix gives a unitary U and diagonal S
with U o S o U* recomposing the input."""

import numpy as np

from talgebra import (
    TMatrix,
    TShape,
    tmat_conj_transpose,
    tmat_identity,
    tmat_mul,
    to_fourier_stack,
    tsvd_hermitian,
)

rng = np.random.default_rng(21)
shape = TShape((3, 3))
d = 5

m = TMatrix(rng.normal(size=(3, 3, d, d)) + 1j * rng.normal(size=(3, 3, d, d)))
g = tmat_mul(m, tmat_conj_transpose(m))  # Hermitian, positive semidefinite

u, s = tsvd_hermitian(g)

# U is unitary over the t-algebra: U* o U is the identity t-matrix
lhs = tmat_mul(tmat_conj_transpose(u), u)
i = tmat_identity(shape, d)
print("U* o U == I:", np.allclose(lhs.data, i.data, atol=1e-10))

# recomposition
recon = tmat_mul(tmat_mul(u, s), tmat_conj_transpose(u))
err = np.linalg.norm(recon.data - g.data) / np.linalg.norm(g.data)
print(f"|U o S o U* - G| / |G| = {err:.2e}")

# the diagonal of S per slice is the descending eigenvalue spectrum
stack = to_fourier_stack(s)
print("slice  top-3 eigenvalues")
for k in range(3):
    top = np.diag(stack.slices[k]).real[:3]
    print(f"  {k}    " + "  ".join(f"{v:8.3f}" for v in top))

# energy captured by the leading half of the spectrum, slice by slice
g_stack = to_fourier_stack(g)
kept = 0.0
total = 0.0
for k in range(shape.slice_count()):
    w = np.diag(stack.slices[k]).real
    kept += np.sum(w[: d // 2] ** 2)
    total += np.sum(w**2)
print(f"spectral energy in leading {d // 2} of {d} columns: {kept / total:.1%}")
