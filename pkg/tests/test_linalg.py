"""Bipartite linear algebra primitives."""
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from ncorr import (
    BipartiteDims,
    DensityMatrix,
    MalformedInputError,
    bell,
    commutator_fro_norm,
    hermitian_eig,
    kron,
    partial_trace,
    partial_transpose,
    sigma,
    tau,
    tensor_product,
)


def random_hermitian(d, seed):
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return (z + z.conj().T) / 2


def random_rho(dims, seed):
    rng = np.random.default_rng(seed)
    d = dims[0] * dims[1]
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    mat = g @ g.conj().T
    return DensityMatrix(mat / mat.trace().real, BipartiteDims(*dims))


class TestBipartiteDims:
    def test_total(self):
        assert BipartiteDims(3, 4).total == 12

    @pytest.mark.parametrize("bad", [(0, 2), (2, 0), (-1, 3)])
    def test_rejects_nonpositive(self, bad):
        with pytest.raises(MalformedInputError, match="must be >= 1"):
            BipartiteDims(*bad)


class TestDensityMatrix:
    def test_accepts_valid(self):
        rho = DensityMatrix(np.eye(4) / 4, (2, 2))
        assert rho.dims == BipartiteDims(2, 2)
        assert rho.mat.dtype == np.complex128

    def test_rejects_shape_mismatch(self):
        with pytest.raises(MalformedInputError, match="does not match dims"):
            DensityMatrix(np.eye(4) / 4, (2, 3))

    def test_rejects_non_hermitian(self):
        mat = np.eye(4) / 4
        mat[0, 1] = 0.2
        with pytest.raises(MalformedInputError, match="not Hermitian"):
            DensityMatrix(mat, (2, 2))

    def test_rejects_wrong_trace(self):
        with pytest.raises(MalformedInputError, match="trace differs"):
            DensityMatrix(np.eye(4) / 2, (2, 2))

    def test_rejects_negative_eigenvalue(self):
        mat = np.diag([0.7, 0.5, -0.1, -0.1])
        with pytest.raises(MalformedInputError, match="not positive semidefinite"):
            DensityMatrix(mat, (2, 2))


class TestPartialTrace:
    def test_traces_to_reduced_of_kron(self):
        """tr_B(x (x) y) = tr(y) * x and tr_A(x (x) y) = tr(x) * y."""
        x = random_hermitian(2, 1)
        y = random_hermitian(3, 2)
        m = kron(x, y)
        assert_allclose(partial_trace(m, (2, 3), "A"), np.trace(y) * x, atol=1e-12)
        assert_allclose(partial_trace(m, (2, 3), "B"), np.trace(x) * y, atol=1e-12)

    def test_manual_block_sum(self):
        rho = random_rho((2, 3), 7)
        blocks = rho.mat.reshape(2, 3, 2, 3)
        manual_a = np.zeros((2, 2), dtype=complex)
        for b in range(3):
            manual_a += blocks[:, b, :, b]
        assert_allclose(partial_trace(rho.mat, rho.dims, "A"), manual_a, atol=1e-14)

    @given(st.integers(0, 50))
    def test_preserves_trace(self, seed):
        rho = random_rho((2, 2), seed)
        for keep in ("A", "B"):
            red = partial_trace(rho.mat, rho.dims, keep)
            assert abs(np.trace(red) - 1) < 1e-12

    def test_rejects_bad_keep(self):
        with pytest.raises(MalformedInputError, match="keep must be"):
            partial_trace(np.eye(4), (2, 2), "C")

    def test_rejects_shape_mismatch(self):
        with pytest.raises(MalformedInputError, match="does not match dims"):
            partial_trace(np.eye(4), (2, 3), "A")


class TestPartialTranspose:
    @given(st.integers(0, 50))
    def test_involution(self, seed):
        rho = random_rho((2, 3), seed)
        for side in ("A", "B"):
            twice = partial_transpose(partial_transpose(rho.mat, rho.dims, side), rho.dims, side)
            assert_allclose(twice, rho.mat, atol=1e-14)

    @given(st.integers(0, 50))
    def test_both_sides_compose_to_full_transpose(self, seed):
        rho = random_rho((2, 3), seed)
        ab = partial_transpose(partial_transpose(rho.mat, rho.dims, "A"), rho.dims, "B")
        assert_allclose(ab, rho.mat.T, atol=1e-14)

    def test_on_kron_transposes_one_factor(self):
        x = random_hermitian(2, 3)
        y = random_hermitian(2, 4)
        m = kron(x, y)
        assert_allclose(partial_transpose(m, (2, 2), "B"), kron(x, y.T), atol=1e-13)
        assert_allclose(partial_transpose(m, (2, 2), "A"), kron(x.T, y), atol=1e-13)

    def test_bell_spectrum(self):
        """The flipped maximally entangled pair is the swap operator over 2."""
        pt = partial_transpose(bell(2).mat, (2, 2), "B")
        assert_allclose(np.linalg.eigvalsh(pt), [-0.5, 0.5, 0.5, 0.5], atol=1e-12)

    def test_rejects_bad_side(self):
        with pytest.raises(MalformedInputError, match="side must be"):
            partial_transpose(np.eye(4), (2, 2), "X")


class TestHermitianEig:
    def test_ascending_and_reconstructs(self):
        m = random_hermitian(5, 11)
        values, vectors = hermitian_eig(m)
        assert np.all(np.diff(values) >= 0)
        assert_allclose(vectors @ np.diag(values) @ vectors.conj().T, m, atol=1e-12)

    def test_rejects_non_hermitian(self):
        with pytest.raises(MalformedInputError, match="not Hermitian"):
            hermitian_eig(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_rejects_non_square(self):
        with pytest.raises(MalformedInputError, match="square"):
            hermitian_eig(np.zeros((2, 3)))


class TestCommutator:
    def test_zero_for_commuting(self):
        assert commutator_fro_norm(np.diag([1.0, 2.0]), np.diag([3.0, 4.0])) == 0.0

    def test_pauli_pair(self):
        x = np.array([[0, 1], [1, 0]], dtype=complex)
        z = np.diag([1.0, -1.0]).astype(complex)
        # [X, Z] = -2iY has Frobenius norm 2 sqrt(2)
        assert abs(commutator_fro_norm(x, z) - 2 * np.sqrt(2)) < 1e-12

    def test_rejects_mismatched(self):
        with pytest.raises(MalformedInputError, match="square matrices of equal shape"):
            commutator_fro_norm(np.eye(2), np.eye(3))


class TestTensorProduct:
    def test_entry_mapping(self):
        """Entry check against the definition: row (a, c), column (b, d) on
        the combined sides, each factor indexed the ordinary way."""
        s = sigma()
        t = tau()
        big = tensor_product(s, t)
        assert big.dims == BipartiteDims(6, 6)
        rng = np.random.default_rng(0)
        for _ in range(300):
            a, a2, b, b2 = rng.integers(0, 2, size=4)
            c, c2, d, d2 = rng.integers(0, 3, size=4)
            row = (a * 3 + c) * 6 + (b * 3 + d)
            col = (a2 * 3 + c2) * 6 + (b2 * 3 + d2)
            expected = s.mat[a * 2 + b, a2 * 2 + b2] * t.mat[c * 3 + d, c2 * 3 + d2]
            assert big.mat[row, col] == pytest.approx(expected, abs=1e-15)

    def test_reductions_factorize(self):
        s = random_rho((2, 2), 5)
        t = random_rho((2, 3), 6)
        big = tensor_product(s, t)
        left = kron(partial_trace(s.mat, s.dims, "A"), partial_trace(t.mat, t.dims, "A"))
        right = kron(partial_trace(s.mat, s.dims, "B"), partial_trace(t.mat, t.dims, "B"))
        assert_allclose(partial_trace(big.mat, big.dims, "A"), left, atol=1e-12)
        assert_allclose(partial_trace(big.mat, big.dims, "B"), right, atol=1e-12)
