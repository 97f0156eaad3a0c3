"""Tour of t-scalar arithmetic: entry-wise sums, circular-convolution products,
conjugation and the Fourier transform that diagonalizes all of it."""

import numpy as np

from talgebra import TShape, multiway_dft, multiway_idft, tscalar, tscalar_identity

rng = np.random.default_rng(7)

a = tscalar([[1.0, 2.0], [3.0, 4.0]])
b = tscalar([[0.0, 1.0], [0.0, 0.0]])
print("a =\n", a.data)
print("b =\n", b.data)

# multiplication is 2-way circular convolution, not the entry-wise product
print("a * b =\n", (a * b).data.real)

# the identity has a single 1 in the corner
e = tscalar_identity(TShape((2, 2)))
print("identity:\n", e.data.real)
print("a * e == a:", np.allclose((a * e).data, a.data))

# the multi-way DFT turns products into entry-wise products
fa, fb = multiway_dft(a), multiway_dft(b)
lhs = multiway_dft(a * b).data
print("DFT(a*b) == DFT(a).DFT(b):", np.allclose(lhs, fa.data * fb.data))

# conjugation reverses indices circularly and conjugates entries; in the
# Fourier domain it is plain complex conjugation
c = tscalar(rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3)))
print(
    "DFT(conj(c)) == conj(DFT(c)):",
    np.allclose(multiway_dft(c.conj()).data, np.conj(multiway_dft(c).data)),
)

# round trip
print("IDFT(DFT(c)) == c:", np.allclose(multiway_idft(multiway_dft(c)).data, c.data))

# c * conj(c) has a real, nonnegative Fourier spectrum: a "modulus squared"
spec = multiway_dft(c * c.conj()).data
print("spectrum of c*conj(c) real:", np.abs(spec.imag).max() < 1e-12)
print("spectrum of c*conj(c) >= 0:", spec.real.min() >= -1e-12)
