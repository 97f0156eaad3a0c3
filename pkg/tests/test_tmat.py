import numpy as np
import pytest

from talgebra import (
    FourierStack,
    NotHermitianError,
    TMatrix,
    TShape,
    from_fourier_stack,
    linear_index,
    multi_index,
    multiway_dft,
    tmat_add,
    tmat_conj_transpose,
    tmat_identity,
    tmat_mul,
    tmat_zero,
    to_fourier_stack,
    tsvd_hermitian,
)

from oracles import conv_tmat_product


def rand_tmat(rng, dims, d1, d2, complex_values=True):
    data = rng.normal(size=dims + (d1, d2))
    if complex_values:
        data = data + 1j * rng.normal(size=dims + (d1, d2))
    return TMatrix(data)


def rel_err(got, want):
    scale = np.linalg.norm(np.asarray(want).ravel())
    return np.linalg.norm(np.asarray(got - want).ravel()) / max(scale, 1e-300)


class TestTMatrixType:
    def test_construction_infers_tshape(self, rng):
        m = rand_tmat(rng, (3, 3), 4, 2)
        assert m.tshape == TShape((3, 3))
        assert m.rows == 4 and m.cols == 2

    def test_explicit_tshape_checked(self, rng):
        data = rng.normal(size=(3, 3, 4, 2))
        TMatrix(data, TShape((3, 3)))
        with pytest.raises(ValueError):
            TMatrix(data, TShape((3,)))

    def test_too_few_axes(self):
        with pytest.raises(ValueError):
            TMatrix(np.zeros(4))

    def test_zero_matrix_extent(self):
        with pytest.raises(ValueError):
            TMatrix(np.zeros((3, 3, 0, 2)))

    def test_immutable(self, rng):
        m = rand_tmat(rng, (2,), 2, 2)
        with pytest.raises(ValueError):
            m.data[0, 0, 0] = 1
        with pytest.raises(AttributeError):
            m.data = np.zeros((2, 2, 2))

    def test_entry(self, rng):
        m = rand_tmat(rng, (2, 2), 3, 2)
        e = m.entry(1, 0)
        assert e.shape == TShape((2, 2))
        assert np.array_equal(e.data, m.data[:, :, 1, 0])

    def test_real_storage_allowed(self):
        m = TMatrix(np.ones((3, 2, 2)))
        assert m.data.dtype == np.float64
        s = to_fourier_stack(m)
        assert np.iscomplexobj(s.slices)


class TestFourierStackType:
    def test_slice_count_checked(self):
        with pytest.raises(ValueError):
            FourierStack(np.zeros((5, 2, 2), dtype=complex), TShape((2, 2)))

    def test_slice_at_canonical_order(self, rng):
        m = rand_tmat(rng, (2, 3), 2, 2)
        s = to_fourier_stack(m)
        for k in range(6):
            idx = multi_index(TShape((2, 3)), k)
            assert np.array_equal(s.slice_at(idx), s.slices[k])
            assert linear_index(TShape((2, 3)), idx) == k


class TestZeroIdentity:
    def test_identity_trivial_shape(self):
        m = tmat_identity(TShape((1,)), 3)
        assert np.array_equal(m.data[0], np.eye(3))

    def test_identity_slices_are_identity(self):
        s = to_fourier_stack(tmat_identity(TShape((3, 3)), 4))
        for k in range(9):
            assert np.allclose(s.slices[k], np.eye(4), atol=1e-12)

    def test_identity_law(self, rng):
        a = rand_tmat(rng, (3, 3), 4, 4)
        i = tmat_identity(TShape((3, 3)), 4)
        assert rel_err(tmat_mul(i, a).data, a.data) < 1e-12
        assert rel_err(tmat_mul(a, i).data, a.data) < 1e-12

    def test_zero_add(self, rng):
        a = rand_tmat(rng, (2, 2), 3, 2)
        z = tmat_zero(TShape((2, 2)), 3, 2)
        assert np.array_equal(tmat_add(a, z).data, a.data)


class TestAdd:
    def test_canonical_oracle(self, rng):
        a = rand_tmat(rng, (1,), 5, 4)
        b = rand_tmat(rng, (1,), 5, 4)
        assert np.array_equal(tmat_add(a, b).data[0], a.data[0] + b.data[0])

    def test_associative(self, rng):
        a, b, c = (rand_tmat(rng, (2, 2), 3, 3) for _ in range(3))
        lhs = tmat_add(tmat_add(a, b), c)
        rhs = tmat_add(a, tmat_add(b, c))
        assert rel_err(lhs.data, rhs.data) < 1e-14

    def test_mismatch(self, rng):
        with pytest.raises(ValueError):
            tmat_add(rand_tmat(rng, (2,), 3, 2), rand_tmat(rng, (2,), 2, 3))
        with pytest.raises(ValueError):
            tmat_add(rand_tmat(rng, (2,), 3, 2), rand_tmat(rng, (3,), 3, 2))


class TestMul:
    def test_canonical_oracle(self, rng):
        for _ in range(10):
            a = rand_tmat(rng, (1,), 4, 3)
            b = rand_tmat(rng, (1,), 3, 5)
            got = tmat_mul(a, b).data[0]
            assert rel_err(got, a.data[0] @ b.data[0]) < 1e-12

    def test_convolution_definition_oracle(self, rng):
        for _ in range(10):
            a = rand_tmat(rng, (2, 2), 2, 2)
            b = rand_tmat(rng, (2, 2), 2, 2)
            want = conv_tmat_product(a.data, b.data)
            assert rel_err(tmat_mul(a, b).data, want) < 1e-12

    def test_slice_homomorphism(self, rng):
        a = rand_tmat(rng, (2, 3), 3, 4)
        b = rand_tmat(rng, (2, 3), 4, 2)
        sa, sb = to_fourier_stack(a).slices, to_fourier_stack(b).slices
        sc = to_fourier_stack(tmat_mul(a, b)).slices
        for k in range(6):
            assert rel_err(sc[k], sa[k] @ sb[k]) < 1e-12

    def test_mismatch(self, rng):
        with pytest.raises(ValueError):
            tmat_mul(rand_tmat(rng, (2,), 3, 2), rand_tmat(rng, (2,), 3, 2))
        with pytest.raises(ValueError):
            tmat_mul(rand_tmat(rng, (2,), 3, 2), rand_tmat(rng, (3,), 2, 3))

    def test_operator(self, rng):
        a = rand_tmat(rng, (2,), 2, 2)
        b = rand_tmat(rng, (2,), 2, 2)
        assert np.array_equal((a @ b).data, tmat_mul(a, b).data)


class TestConjTranspose:
    def test_involution(self, rng):
        a = rand_tmat(rng, (3, 3), 4, 2)
        assert rel_err(tmat_conj_transpose(tmat_conj_transpose(a)).data, a.data) == 0

    def test_canonical_oracle(self, rng):
        a = rand_tmat(rng, (1,), 4, 3)
        assert np.array_equal(tmat_conj_transpose(a).data[0], a.data[0].conj().T)

    def test_slices_hermitian_transposed(self, rng):
        a = rand_tmat(rng, (2, 3), 3, 4)
        sa = to_fourier_stack(a).slices
        sh = to_fourier_stack(tmat_conj_transpose(a)).slices
        for k in range(6):
            assert rel_err(sh[k], sa[k].conj().T) < 1e-12


class TestFourierStackTransform:
    def test_trivial_shape_single_slice(self, rng):
        a = rand_tmat(rng, (1,), 3, 3)
        s = to_fourier_stack(a)
        assert s.slices.shape == (1, 3, 3)
        assert np.allclose(s.slices[0], a.data[0], atol=1e-14)

    def test_entrywise_dft_spot_checks(self, rng):
        a = rand_tmat(rng, (2, 3), 3, 2)
        s = to_fourier_stack(a)
        shape = TShape((2, 3))
        for k in [0, 2, 5]:
            idx = multi_index(shape, k)
            pos = tuple(i - 1 for i in idx)
            for d1 in range(3):
                for d2 in range(2):
                    want = multiway_dft(a.entry(d1, d2)).data[pos]
                    assert abs(s.slices[k, d1, d2] - want) < 1e-10

    def test_round_trip(self, rng):
        a = rand_tmat(rng, (3, 3), 4, 2)
        assert rel_err(from_fourier_stack(to_fourier_stack(a)).data, a.data) < 1e-13

    def test_all_identity_slices(self):
        stack = FourierStack(
            np.broadcast_to(np.eye(3, dtype=complex), (9, 3, 3)).copy(), TShape((3, 3))
        )
        got = from_fourier_stack(stack)
        assert rel_err(got.data, tmat_identity(TShape((3, 3)), 3).data) < 1e-13

    def test_one_hot_slice_gives_exponentials(self):
        shape = TShape((2, 3))
        k0 = 4
        slices = np.zeros((6, 2, 2), dtype=complex)
        slices[k0] = np.ones((2, 2))
        got = from_fourier_stack(FourierStack(slices, shape)).data
        pos = tuple(i - 1 for i in multi_index(shape, k0))
        n1, n2 = np.meshgrid(np.arange(2), np.arange(3), indexing="ij")
        expo = np.exp(2j * np.pi * (pos[0] * n1 / 2 + pos[1] * n2 / 3)) / 6
        want = expo[:, :, None, None] * np.ones((2, 2))
        assert rel_err(got, want) < 1e-13

    def test_real_entries_mirror_symmetry(self, rng):
        a = TMatrix(rng.normal(size=(3, 4, 2, 2)))
        s = to_fourier_stack(a).slices.reshape(3, 4, 2, 2)
        for i in range(3):
            for j in range(4):
                mirrored = s[(-i) % 3, (-j) % 4]
                assert rel_err(s[i, j], mirrored.conj()) < 1e-10


def rand_psd(rng, dims, d, rank=None):
    m = rand_tmat(rng, dims, d, rank or d)
    return tmat_mul(m, tmat_conj_transpose(m))


class TestTsvd:
    def test_identity_input(self):
        i = tmat_identity(TShape((2, 2)), 3)
        u, s = tsvd_hermitian(i)
        assert rel_err(s.data, i.data) < 1e-12
        recon = tmat_mul(tmat_mul(u, s), tmat_conj_transpose(u))
        assert rel_err(recon.data, i.data) < 1e-12

    def test_canonical_eigensolver_oracle(self, rng):
        a = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
        g = a @ a.conj().T
        u, s = tsvd_hermitian(TMatrix(g[None, :, :], TShape((1,))))
        w = np.linalg.eigvalsh(g)[::-1]
        assert np.allclose(np.diag(s.data[0]).real, w, rtol=1e-10, atol=1e-10)
        recon = u.data[0] @ s.data[0] @ u.data[0].conj().T
        assert rel_err(recon, g) < 1e-10

    def test_unitary_and_residual(self, rng):
        g = rand_psd(rng, (3, 3), 4)
        u, s = tsvd_hermitian(g)
        i = tmat_identity(TShape((3, 3)), 4)
        assert rel_err(tmat_mul(tmat_conj_transpose(u), u).data, i.data) < 1e-8
        recon = tmat_mul(tmat_mul(u, s), tmat_conj_transpose(u))
        g_slices = to_fourier_stack(g).slices
        r_slices = to_fourier_stack(recon).slices
        for k in range(9):
            resid = np.linalg.norm(r_slices[k] - g_slices[k])
            assert resid <= 1e-8 * max(np.linalg.norm(g_slices[k]), 1e-300)

    def test_diagonal_real_nonneg_descending(self, rng):
        # rank deficiency makes eigh emit tiny negatives; clamping must zero them
        g = rand_psd(rng, (2, 2), 5, rank=2)
        _, s = tsvd_hermitian(g)
        slices = to_fourier_stack(s).slices
        for k in range(4):
            diag = np.diag(slices[k])
            assert np.abs(diag.imag).max() < 1e-10
            assert diag.real.min() >= 0
            assert np.all(np.diff(diag.real) <= 1e-10)
            off = slices[k] - np.diag(np.diag(slices[k]))
            assert np.abs(off).max() < 1e-10

    def test_not_square(self, rng):
        with pytest.raises(ValueError):
            tsvd_hermitian(rand_tmat(rng, (2,), 3, 4))

    def test_not_hermitian(self, rng):
        a = rand_tmat(rng, (2, 2), 3, 3)
        with pytest.raises(NotHermitianError):
            tsvd_hermitian(a)

    def test_parallelism_independent(self, rng):
        g = rand_psd(rng, (3, 3), 4)
        u1, s1 = tsvd_hermitian(g, parallelism=1)
        u3, s3 = tsvd_hermitian(g, parallelism=3)
        assert np.array_equal(u1.data, u3.data)
        assert np.array_equal(s1.data, s3.data)
