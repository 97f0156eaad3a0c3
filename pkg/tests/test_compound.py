import numpy as np
import pytest

from talgebra import (
    TShape,
    central_spatial_slice,
    image_to_tvector,
    raster_image,
    raster_vector,
    spatial_slice,
    strategy1_extend,
    strategy2_extend,
    tvector_to_image,
)

from oracles import nested_neighborhood_pixel, window_pixel


class TestStrategy1:
    def test_single_pixel_image(self):
        cimg = strategy1_extend(np.array([[5.0]]), reuses=1)
        assert cimg.tshape == TShape((3, 3))
        assert cimg.rows == 1 and cimg.cols == 1
        box = cimg.tmatrix.data[:, :, 0, 0]
        want = np.zeros((3, 3))
        want[1, 1] = 5.0
        assert np.array_equal(box, want)

    def test_constant_image_interior_and_border(self):
        cimg = strategy1_extend(np.full((5, 5), 7.0), reuses=1)
        assert np.array_equal(cimg.tmatrix.data[:, :, 2, 2], np.full((3, 3), 7.0))
        corner = cimg.tmatrix.data[:, :, 0, 0]
        want = np.zeros((3, 3))
        want[1:, 1:] = 7.0
        assert np.array_equal(corner, want)

    def test_reuse_entries_depend_on_offset_sums(self):
        img = (10 * np.arange(5)[:, None] + np.arange(5)[None, :]).astype(float)
        cimg = strategy1_extend(img, reuses=2)
        assert cimg.tshape == TShape((3, 3, 3, 3))
        box = cimg.tmatrix.data[..., 2, 2]  # compound pixel at (3, 3), 1-based
        # offsets sum to zero: both land on the source pixel itself
        assert box[1, 1, 1, 1] == img[2, 2]
        assert box[0, 1, 2, 1] == img[2, 2]
        # offsets (+2, +2)
        assert box[2, 2, 2, 2] == img[4, 4]
        for i1, j1, i2, j2 in np.ndindex(3, 3, 3, 3):
            si, sj = i1 + i2 - 2, j1 + j2 - 2
            assert box[i1, j1, i2, j2] == box[i2, j2, i1, j1]
            rr, cc = 2 + si, 2 + sj
            want = img[rr, cc] if 0 <= rr < 5 and 0 <= cc < 5 else 0.0
            assert box[i1, j1, i2, j2] == want

    @pytest.mark.parametrize("reuses", [1, 2])
    def test_recursion_oracle(self, rng, reuses):
        img = rng.integers(0, 256, size=(6, 5)).astype(float)
        cimg = strategy1_extend(img, reuses=reuses)
        for r in range(6):
            for c in range(5):
                want = nested_neighborhood_pixel(img, r + 1, c + 1, reuses)
                assert np.array_equal(cimg.tmatrix.data[..., r, c], want)

    def test_provenance_and_errors(self):
        cimg = strategy1_extend(np.ones((2, 2)), reuses=1)
        assert cimg.strategy == "strategy1" and cimg.parameter == 1
        with pytest.raises(ValueError):
            strategy1_extend(np.ones((2, 2)), reuses=0)
        with pytest.raises(ValueError):
            strategy1_extend(np.ones((3,)), reuses=1)

    def test_float32_preserved(self):
        cimg = strategy1_extend(np.ones((4, 4), dtype=np.float32), reuses=1)
        assert cimg.tmatrix.data.dtype == np.float32


class TestStrategy2:
    def test_window3_matches_one_reuse(self, rng):
        img = rng.integers(0, 256, size=(5, 7)).astype(float)
        a = strategy2_extend(img, window=3)
        b = strategy1_extend(img, reuses=1)
        assert np.array_equal(a.tmatrix.data, b.tmatrix.data)

    def test_single_pixel_window5(self):
        cimg = strategy2_extend(np.array([[5.0]]), window=5)
        box = cimg.tmatrix.data[:, :, 0, 0]
        want = np.zeros((5, 5))
        want[2, 2] = 5.0
        assert np.array_equal(box, want)

    def test_window_oracle(self, rng):
        img = rng.integers(0, 256, size=(6, 6)).astype(float)
        cimg = strategy2_extend(img, window=5)
        for r in range(6):
            for c in range(6):
                want = window_pixel(img, r + 1, c + 1, 5)
                assert np.array_equal(cimg.tmatrix.data[:, :, r, c], want)

    def test_corner_zero_padding(self, rng):
        img = rng.integers(1, 256, size=(10, 10)).astype(float)
        cimg = strategy2_extend(img, window=9)
        box = cimg.tmatrix.data[:, :, 0, 0]
        assert np.array_equal(box, window_pixel(img, 1, 1, 9))
        assert np.all(box[:4, :] == 0)
        assert np.all(box[:, :4] == 0)
        assert np.all(box[4:, 4:] != 0)

    def test_errors(self):
        for w in (1, 2, 4):
            with pytest.raises(ValueError):
                strategy2_extend(np.ones((4, 4)), window=w)


class TestRasterization:
    def test_tvector_column_major(self, rng):
        img = rng.normal(size=(2, 2))
        cimg = strategy2_extend(img, window=3)
        x = image_to_tvector(cimg)
        assert x.rows == 4 and x.cols == 1
        # entry d=3: d-1 = (c-1)*R + (r-1) = 2 -> pixel row 1, column 2
        assert np.array_equal(x.data[:, :, 2, 0], cimg.tmatrix.data[:, :, 0, 1])

    def test_round_trips(self, rng):
        img = rng.normal(size=(4, 3))
        cimg = strategy1_extend(img, reuses=1)
        x = image_to_tvector(cimg)
        back = tvector_to_image(x, 4, 3)
        assert np.array_equal(back.data, cimg.tmatrix.data)
        vec = raster_vector(img)
        assert np.array_equal(raster_image(vec, 4, 3), img)

    def test_raster_vector_order(self):
        img = np.arange(6.0).reshape(2, 3)
        want = [img[0, 0], img[1, 0], img[0, 1], img[1, 1], img[0, 2], img[1, 2]]
        assert np.array_equal(raster_vector(img), want)

    def test_shape_errors(self, rng):
        img = rng.normal(size=(4, 3))
        x = image_to_tvector(strategy1_extend(img, reuses=1))
        with pytest.raises(ValueError):
            tvector_to_image(x, 3, 3)
        with pytest.raises(ValueError):
            raster_image(np.zeros(5), 2, 3)


class TestSpatialSlices:
    def test_slice_values_and_reassembly(self, rng):
        img = rng.normal(size=(3, 4))
        x = image_to_tvector(strategy2_extend(img, window=3))
        seen = np.empty_like(x.data[..., 0])
        for i in range(3):
            for j in range(3):
                seen[i, j] = spatial_slice(x, (i + 1, j + 1))
        assert np.array_equal(seen, x.data[..., 0])

    def test_out_of_bounds(self, rng):
        x = image_to_tvector(strategy2_extend(rng.normal(size=(3, 3)), window=3))
        for idx in [(0, 1), (4, 1), (1,), (1, 2, 3)]:
            with pytest.raises(ValueError):
                spatial_slice(x, idx)

    def test_central_index(self, rng):
        img = rng.normal(size=(4, 4))
        x3 = image_to_tvector(strategy2_extend(img, window=3))
        assert x3.tshape.center() == (2, 2)
        x9 = image_to_tvector(strategy2_extend(img, window=9))
        assert x9.tshape.center() == (5, 5)

    def test_center_recovers_source_exactly(self, rng):
        for _ in range(3):
            img = rng.integers(0, 256, size=(6, 5)).astype(float)
            vec = raster_vector(img)
            for cimg in [
                strategy1_extend(img, 1),
                strategy1_extend(img, 2),
                strategy2_extend(img, 3),
                strategy2_extend(img, 5),
                strategy2_extend(img, 9),
            ]:
                got = central_spatial_slice(image_to_tvector(cimg))
                assert np.array_equal(got, vec)

    def test_even_extent_has_no_center(self, rng):
        from talgebra import TMatrix

        x = TMatrix(rng.normal(size=(2, 2, 3, 1)))
        with pytest.raises(ValueError):
            central_spatial_slice(x)
