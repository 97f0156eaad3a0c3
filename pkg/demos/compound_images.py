"""Compound images: every pixel becomes a t-scalar holding its neighborhood.

Strategy 1 nests 3x3 neighborhoods (one reuse -> shape 3x3, two -> 3x3x3x3).
Strategy 2 takes a single w x w window.  Either way the central component of
each compound pixel is the source pixel, so the central spatial slice of the
compound t-vector recovers the image exactly."""

import numpy as np

from talgebra import (
    central_spatial_slice,
    image_to_tvector,
    raster_vector,
    spatial_slice,
    strategy1_extend,
    strategy2_extend,
)

img = np.zeros((7, 7))
img[1:6, 3] = 200.0   # a vertical stroke
img[3, 1:6] = 200.0   # a horizontal stroke

def show(title, a):
    print(title)
    for row in np.asarray(a):
        print("  " + "".join("#" if v > 100 else "." for v in row))

show("source image:", img)

c1 = strategy1_extend(img, reuses=1)
print("strategy 1, one reuse:", c1.tshape.dims, "per pixel")
c2 = strategy2_extend(img, window=5)
print("strategy 2, window 5: ", c2.tshape.dims, "per pixel")

# the compound pixel at the stroke crossing holds its whole neighborhood
box = c2.tmatrix.data[:, :, 3, 3]
show("5x5 window at the crossing (3,3):", box)

x = image_to_tvector(c2)
print("t-vector length:", x.rows, "of t-scalars shaped", x.tshape.dims)

# central slice == original raster vector, exactly
center = central_spatial_slice(x)
print("center slice == source:", np.array_equal(center, raster_vector(img)))

# an off-center slice is a shifted copy: each position holds a neighbor
# (here the left one), with zero fill at the border
left = spatial_slice(x, (3, 2)).reshape(7, 7, order="F")
show("slice (3,2): every position reads its left neighbor", left)
