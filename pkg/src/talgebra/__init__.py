"""Numerics over the algebra of fixed-shape complex arrays (t-scalars).

Multiplication of t-scalars is circular convolution, diagonalized by the
multi-way Fourier transform; matrices over them decompose into independent
complex matrices per Fourier slice.  On top of that sit a slice-wise
eigendecomposition, PCA generalized over the algebra, compound-image
construction, and a compression benchmark harness (``talgebra.bench``,
CLI ``talgebra``).
"""

from .tcore import (
    TScalar,
    TShape,
    linear_index,
    multi_index,
    multiway_dft,
    multiway_idft,
    tscalar,
    tscalar_add,
    tscalar_conj,
    tscalar_identity,
    tscalar_mul,
    tscalar_zero,
)
from .tmat import (
    FourierStack,
    NotHermitianError,
    TMatrix,
    TVector,
    from_fourier_stack,
    tmat_add,
    tmat_conj_transpose,
    tmat_identity,
    tmat_mul,
    tmat_zero,
    to_fourier_stack,
    tsvd_hermitian,
)
from .tpca import (
    PcaModel,
    TpcaModel,
    load_model,
    pca_fit,
    pca_reconstruct,
    pca_transform,
    save_model,
    tpca_fit,
    tpca_reconstruct,
    tpca_transform,
)
from .compound import (
    CompoundImage,
    central_spatial_slice,
    image_to_tvector,
    raster_image,
    raster_vector,
    spatial_slice,
    strategy1_extend,
    strategy2_extend,
    tvector_to_image,
)

__version__ = "0.1.0"

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
    "CompoundImage",
    "strategy1_extend",
    "strategy2_extend",
    "image_to_tvector",
    "tvector_to_image",
    "raster_vector",
    "raster_image",
    "spatial_slice",
    "central_spatial_slice",
    "__version__",
]
