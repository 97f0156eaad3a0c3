"""Tensorial PCA on synthetic low-rank data.

Draws t-vectors from a 3-factor model plus noise, fits per-slice PCA, and
shows the reconstruction error collapsing once d reaches the true rank.
With the trivial t-scalar shape (1,) the same code path reproduces ordinary
PCA exactly."""

import numpy as np

from talgebra import TMatrix, pca_fit, pca_reconstruct, pca_transform, tpca_fit, tpca_reconstruct, tpca_transform

rng = np.random.default_rng(99)
dims = (3, 3)   # t-scalar shape
length = 12     # t-vector length
rank = 3
n_train = 60

# low-rank factors, shared across the Fourier slices, plus small noise
factors = rng.normal(size=(rank,) + dims + (length, 1))
train = []
for _ in range(n_train):
    coef = rng.normal(size=rank)
    data = np.tensordot(coef, factors, axes=1)
    data += 0.01 * rng.normal(size=data.shape)
    train.append(TMatrix(data))

model = tpca_fit(train)

print("d   mean rel reconstruction error")
for d in (1, 2, 3, 4, 6, 12):
    errs = []
    for v in train[:20]:
        f = tpca_transform(model, v)
        r = tpca_reconstruct(model, f, d)
        errs.append(np.linalg.norm(r.data - v.data) / np.linalg.norm(v.data))
    print(f"{d:<4}{np.mean(errs):.4f}")

# sanity: at shape (1,) the tensorial path is ordinary PCA
x = rng.normal(size=(30, 8))
tmodel = tpca_fit([TMatrix(row.reshape(1, 8, 1)) for row in x])
pmodel = pca_fit(x)
y = rng.normal(size=8)
ty = TMatrix(y.reshape(1, 8, 1))
tr = tpca_reconstruct(tmodel, tpca_transform(tmodel, ty), 4).data[0, :, 0]
pr = pca_reconstruct(pmodel, pca_transform(pmodel, y), 4)
print("trivial-shape path == plain PCA:", np.allclose(tr, pr, atol=1e-10))
