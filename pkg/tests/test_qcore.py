"""Tests for the dense linear-algebra core: Pauli algebra, states, exponentials, random streams."""

import numpy as np
import pytest
from scipy.linalg import expm

from ddqe.exceptions import DimensionError, DomainError
from ddqe.qcore import (
    IDENTITY2,
    KET_UP,
    PAULIS,
    SIGMA_MINUS,
    SIGMA_PLUS,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    BlochVector,
    DensityMatrix,
    RngStream,
    as_matrix,
    bloch_map,
    commutator,
    dagger,
    density_from_bloch,
    dissipator,
    gaussian,
    haar_unitary,
    hermitian_basis,
    mat_exp,
    propagators,
    pure_state,
    purity,
    superoperator,
)


class TestPauliAlgebra:
    def test_products(self):
        assert np.allclose(SIGMA_X @ SIGMA_Y, 1j * SIGMA_Z)
        assert np.allclose(SIGMA_Y @ SIGMA_Z, 1j * SIGMA_X)
        for s in PAULIS:
            assert np.allclose(s @ s, IDENTITY2)

    def test_ladder_operators(self):
        """sigma_+ = |up><down| raises the down state."""
        assert np.allclose(SIGMA_PLUS @ np.array([0, 1]), KET_UP)
        assert np.allclose(SIGMA_PLUS + SIGMA_MINUS, SIGMA_X)

    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_hermitian_basis_orthogonality(self, d):
        basis = hermitian_basis(d)
        assert basis.shape == (d * d - 1, d, d)
        gram = np.einsum("aij,bji->ab", basis, basis)
        assert np.allclose(gram, 2.0 * np.eye(d * d - 1))
        assert np.allclose(np.einsum("aii->a", basis), 0.0)

    def test_qubit_basis_is_pauli(self):
        assert np.allclose(hermitian_basis(2), np.array(PAULIS))


class TestLinalg:
    def test_as_matrix_rejects_non_square(self):
        with pytest.raises(DimensionError):
            as_matrix(np.zeros((2, 3)))

    def test_as_matrix_rejects_nan(self):
        with pytest.raises(DomainError):
            as_matrix([[np.nan, 0], [0, 1]])

    def test_pauli_closed_form_matches_expm(self):
        a = 0.3 * SIGMA_X - 0.4 * SIGMA_Y + 1.2 * SIGMA_Z
        assert np.allclose(mat_exp(a, -0.7j), expm(-0.7j * a), atol=1e-13)

    def test_hermitian_eigen_path_matches_expm(self, rng):
        gen = rng.generator()
        z = gen.standard_normal((3, 3)) + 1j * gen.standard_normal((3, 3))
        h = 0.5 * (z + dagger(z))
        assert np.allclose(mat_exp(h, -1j), expm(-1j * h), atol=1e-12)

    def test_nilpotent_falls_back_to_pade(self):
        assert np.allclose(mat_exp(SIGMA_PLUS), IDENTITY2 + SIGMA_PLUS)

    def test_propagators_are_unitary(self):
        h = SIGMA_Z + 0.5 * SIGMA_X
        times = np.linspace(0.0, 3.0, 7)
        u = propagators(h, times, h_bar=2.0)
        assert u.shape == (7, 2, 2)
        for t, ut in zip(times, u):
            assert np.allclose(ut @ dagger(ut), IDENTITY2)
            assert np.allclose(ut, expm(-1j * h * t / 2.0))

    def test_propagators_reject_non_hermitian(self):
        with pytest.raises(DomainError):
            propagators(SIGMA_PLUS, np.array([1.0]))

    def test_superoperator_row_major(self, rng):
        gen = rng.generator()
        left, rho, right = (gen.standard_normal((2, 2)) for _ in range(3))
        vec = superoperator(left, right) @ rho.reshape(4)
        assert np.allclose(vec.reshape(2, 2), left @ rho @ right)

    def test_dissipator_is_trace_preserving(self, plus_state):
        out = dissipator(SIGMA_MINUS, plus_state.matrix)
        assert abs(np.trace(out)) < 1e-14
        assert np.allclose(commutator(SIGMA_Z, SIGMA_Z), 0.0)


class TestStates:
    def test_rejects_non_hermitian(self):
        with pytest.raises(DomainError):
            DensityMatrix(np.array([[1, 1], [0, 0]]))

    def test_rejects_wrong_trace(self):
        with pytest.raises(DomainError):
            DensityMatrix(np.eye(2))

    def test_rejects_negative_eigenvalue(self):
        with pytest.raises(DomainError):
            DensityMatrix(np.diag([1.5, -0.5]))

    def test_matrix_is_read_only(self, plus_state):
        with pytest.raises(ValueError):
            plus_state.matrix[0, 0] = 0.0

    def test_bloch_of_plus_state(self, plus_state):
        assert np.allclose(bloch_map(plus_state).as_array(), [1.0, 0.0, 0.0])

    def test_bloch_inverse(self):
        a = BlochVector(0.3, -0.2, 0.5)
        assert np.allclose(bloch_map(density_from_bloch(a)).as_array(), a.as_array())

    def test_bloch_outside_ball(self):
        with pytest.raises(DomainError):
            density_from_bloch(BlochVector(1.0, 1.0, 0.0))

    def test_bloch_needs_qubit(self):
        with pytest.raises(DimensionError):
            bloch_map(DensityMatrix.maximally_mixed(3))

    @pytest.mark.parametrize("d", [2, 3, 5])
    def test_purity_bounds(self, d):
        assert purity(DensityMatrix.maximally_mixed(d)) == pytest.approx(1.0 / d)

    def test_pure_state_purity(self):
        assert purity(pure_state([1.0, 1j])) == pytest.approx(1.0)

    def test_zero_vector_rejected(self):
        with pytest.raises(DomainError):
            pure_state([0.0, 0.0])

    def test_mix(self, plus_state):
        mixed = plus_state.mix(DensityMatrix.maximally_mixed(2), 0.5)
        assert bloch_map(mixed).a_x == pytest.approx(0.5)


class TestRandom:
    def test_streams_reproduce(self):
        a = RngStream(3, 1, (4,)).generator().standard_normal(5)
        b = RngStream(3, 1, (4,)).generator().standard_normal(5)
        assert np.array_equal(a, b)

    def test_children_differ(self):
        root = RngStream(3)
        a = root.child(0).generator().standard_normal(5)
        b = root.child(1).generator().standard_normal(5)
        assert not np.allclose(a, b)

    def test_successive_draws_advance(self):
        stream = RngStream(7)
        draws = [gaussian(stream) for _ in range(4)]
        assert len(set(draws)) == 4
        again = RngStream(7)
        assert [gaussian(again) for _ in range(4)] == draws

    def test_haar_draws_advance(self):
        stream = RngStream(8)
        assert not np.allclose(haar_unitary(2, stream), haar_unitary(2, stream))

    def test_negative_seed(self):
        with pytest.raises(DomainError):
            RngStream(-1)

    @pytest.mark.parametrize("d", [1, 2, 4])
    def test_haar_unitary(self, d, rng):
        w = haar_unitary(d, rng)
        assert np.allclose(w @ dagger(w), np.eye(d))

    def test_haar_first_moment_vanishes(self):
        gen = RngStream(9).generator()
        mean = np.mean([haar_unitary(2, gen) for _ in range(4000)], axis=0)
        assert np.max(np.abs(mean)) < 0.1

    def test_gaussian_degenerate_and_invalid(self, rng):
        assert gaussian(rng, mean=2.5, sd=0.0) == 2.5
        assert np.array_equal(gaussian(rng, 1.0, 0.0, size=3), np.ones(3))
        with pytest.raises(DomainError):
            gaussian(rng, sd=-1.0)
