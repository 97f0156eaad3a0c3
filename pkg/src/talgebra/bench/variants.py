"""The benchmark variant grid: one PCA baseline plus six t-scalar shapes.

Each variant binds a display name to a t-scalar shape and the neighborhood
strategy that produces it:

    PCA     1            plain vectors
    TPCA    3x3          strategy 1, 1 reuse
    TPCA-A  3x3x3x3      strategy 1, 2 reuses
    TPCA-B  3x3x3x3x3x3  strategy 1, 3 reuses
    TPCA-X  5x5          strategy 2, window 5
    TPCA-Y  7x7          strategy 2, window 7
    TPCA-Z  9x9          strategy 2, window 9
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..compound import image_to_tvector, raster_vector, strategy1_extend, strategy2_extend
from ..tcore import TShape
from ..tmat import TMatrix, TVector

__all__ = ["VariantSpec", "VARIANTS", "ALL_VARIANTS", "parse_variants", "variant_tvector"]


@dataclass(frozen=True)
class VariantSpec:
    name: str       # display name, e.g. "TPCA-A"
    key: str        # CLI token, e.g. "tpca-a"
    tshape: TShape
    strategy: str   # "none", "strategy1" or "strategy2"
    parameter: int  # 0, reuses, or window size


ALL_VARIANTS: tuple[VariantSpec, ...] = (
    VariantSpec("PCA", "pca", TShape((1,)), "none", 0),
    VariantSpec("TPCA", "tpca", TShape((3, 3)), "strategy1", 1),
    VariantSpec("TPCA-A", "tpca-a", TShape((3, 3, 3, 3)), "strategy1", 2),
    VariantSpec("TPCA-B", "tpca-b", TShape((3,) * 6), "strategy1", 3),
    VariantSpec("TPCA-X", "tpca-x", TShape((5, 5)), "strategy2", 5),
    VariantSpec("TPCA-Y", "tpca-y", TShape((7, 7)), "strategy2", 7),
    VariantSpec("TPCA-Z", "tpca-z", TShape((9, 9)), "strategy2", 9),
)

VARIANTS: dict[str, VariantSpec] = {v.key: v for v in ALL_VARIANTS}


def parse_variants(spec: str) -> list[VariantSpec]:
    """Comma-separated CLI tokens -> VariantSpec list, order preserved."""
    out = []
    for token in spec.split(","):
        token = token.strip().lower()
        if not token:
            continue
        if token not in VARIANTS:
            raise ValueError(
                f"unknown variant {token!r}; choose from {', '.join(VARIANTS)}"
            )
        out.append(VARIANTS[token])
    if not out:
        raise ValueError("no variants given")
    return out


def variant_tvector(spec: VariantSpec, img: np.ndarray) -> TVector:
    """Extend an image per the variant's strategy and recast to a t-vector.

    The PCA row uses the trivial t-shape (1,), wrapping the plain raster
    vector, so every variant flows through the same downstream machinery.
    """
    if spec.strategy == "none":
        vec = raster_vector(img)
        return TMatrix(vec.reshape((1, vec.size, 1)), TShape((1,)), copy=False)
    if spec.strategy == "strategy1":
        return image_to_tvector(strategy1_extend(img, spec.parameter))
    if spec.strategy == "strategy2":
        return image_to_tvector(strategy2_extend(img, spec.parameter))
    raise ValueError(f"unknown strategy {spec.strategy!r}")
