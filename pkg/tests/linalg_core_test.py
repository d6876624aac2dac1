#
# SPDX-FileCopyrightText: 2024 collisionengine developers
#
# SPDX-License-Identifier: GPL-3.0-or-later
#

"""
Test suite for the dense matrix primitives
"""

import unittest
import numpy as np
from collisionengine.exceptions import DimensionMismatchError, InvalidStateError
from collisionengine.linalg_core import (
    DOWN,
    SIGMA_X,
    SIGMA_Z,
    UP,
    BlochVector,
    DensityOperator,
    bloch_coordinates,
    bloch_from_density,
    density_from_bloch,
    eigen_hermitian,
    eigen_hermitian_2x2,
    is_unitary,
    kron,
    matrices_from_coordinates,
    partial_trace,
)


def random_density(rng, dimension):
    """Random full-rank density matrix"""
    matrix = rng.standard_normal((dimension, dimension)) + 1j * rng.standard_normal((dimension, dimension))
    matrix = matrix @ np.conj(matrix.T)
    return DensityOperator(matrix / np.trace(matrix))


class LinalgCoreTestSuite(unittest.TestCase):
    """
    Test cases for states, Kronecker products and partial traces
    """

    def setUp(self):
        """
        Set up TestSuite
        """
        self.rng = np.random.default_rng(7)

    def test_kron_index_convention(self):
        """
        (a (x) b)[i*p + k, j*q + l] = a[i, j] b[k, l]
        """
        first = np.arange(4).reshape(2, 2) + 1
        second = np.arange(9).reshape(3, 3) * 1j
        product = kron(first, second)
        self.assertTrue(product.shape == (6, 6))
        self.assertTrue(product[1 * 3 + 2, 0 * 3 + 1] == first[1, 0] * second[2, 1])

    def test_partial_trace_of_product_state(self):
        """
        Tracing out a factor of a product state gives back the other factor
        """
        rho = random_density(self.rng, 2)
        chi = random_density(self.rng, 3)
        theta = random_density(self.rng, 2)
        joint = kron(kron(rho.matrix, chi.matrix), theta.matrix)
        self.assertTrue(np.allclose(partial_trace(joint, (2, 3, 2), 0), rho.matrix, atol=1e-12))
        self.assertTrue(np.allclose(partial_trace(joint, (2, 3, 2), 1), chi.matrix, atol=1e-12))
        self.assertTrue(np.allclose(partial_trace(joint, (2, 3, 2), 2), theta.matrix, atol=1e-12))

    def test_partial_trace_preserves_trace(self):
        """
        The reduced matrix of any joint state has unit trace
        """
        joint = random_density(self.rng, 8)
        reduced = partial_trace(joint.matrix, (2, 4), 0)
        self.assertAlmostEqual(np.trace(reduced).real, 1.0, places=12)

    def test_partial_trace_rejects_wrong_dimensions(self):
        """
        Factor dimensions must multiply to the joint dimension
        """
        joint = np.eye(6) / 6
        self.assertRaises(DimensionMismatchError, partial_trace, joint, (2, 2), 0)
        self.assertRaises(DimensionMismatchError, partial_trace, joint, (2, 3), 2)

    def test_density_operator_validation(self):
        """
        Non-Hermitian, non-normalized or negative matrices are rejected
        """
        self.assertRaises(InvalidStateError, DensityOperator, [[1, 1], [0, 0]])
        self.assertRaises(InvalidStateError, DensityOperator, [[1, 0], [0, 1]])
        self.assertRaises(InvalidStateError, DensityOperator, [[1.5, 0], [0, -0.5]])
        self.assertRaises(InvalidStateError, DensityOperator, [[1.0]])
        self.assertRaises(InvalidStateError, DensityOperator, [[np.nan, 0], [0, 1]])
        # small round-off is tolerated
        DensityOperator([[0.5 + 1e-12, 0], [0, 0.5]])

    def test_matrix_is_read_only(self):
        """
        A validated state cannot be modified in place
        """
        rho = DensityOperator.pure(UP)
        with self.assertRaises(ValueError):
            rho.matrix[0, 0] = 0.0

    def test_bloch_round_trip(self):
        """
        Density matrix to Bloch vector and back
        """
        for _ in range(100):
            rho = random_density(self.rng, 2)
            back = density_from_bloch(bloch_from_density(rho))
            self.assertTrue(back.allclose(rho, 1e-12))

    def test_bloch_of_basis_states(self):
        """
        |up> has z = 1 and |down> has z = -1
        """
        self.assertTrue(bloch_from_density(DensityOperator.pure(UP)).z == 1.0)
        self.assertTrue(bloch_from_density(DensityOperator.pure(DOWN)).z == -1.0)
        plus = DensityOperator.pure([1, 1])
        self.assertAlmostEqual(bloch_from_density(plus).x, 1.0, places=14)

    def test_bloch_vector_norm_bound(self):
        """
        Bloch vectors longer than one are not states
        """
        self.assertRaises(InvalidStateError, BlochVector, 0.8, 0.8, 0.0)
        self.assertAlmostEqual(BlochVector(0.6, 0.0, 0.8).norm, 1.0)

    def test_vectorized_coordinates(self):
        """
        bloch_coordinates matches bloch_from_density on a stack of states
        """
        states = [random_density(self.rng, 2) for _ in range(10)]
        coordinates = bloch_coordinates(np.stack([state.matrix for state in states]))
        for state, row in zip(states, coordinates):
            bloch = bloch_from_density(state)
            self.assertTrue(np.allclose(row, [1.0, bloch.x, bloch.y, bloch.z], atol=1e-14))
        self.assertTrue(np.allclose(matrices_from_coordinates(coordinates)[3], states[3].matrix))

    def test_analytic_eigendecomposition(self):
        """
        The 2x2 eigendecomposition reconstructs the matrix, eigenvalues descending
        """
        for _ in range(200):
            rho = random_density(self.rng, 2)
            values, vectors = eigen_hermitian_2x2(rho)
            self.assertTrue(values[0] >= values[1])
            self.assertTrue(is_unitary(vectors))
            rebuilt = (vectors * values) @ np.conj(vectors.T)
            self.assertTrue(np.allclose(rebuilt, rho.matrix, atol=1e-13))
            self.assertTrue(np.allclose(values, np.linalg.eigvalsh(rho.matrix)[::-1], atol=1e-13))

    def test_degenerate_eigenvalues_keep_basis(self):
        """
        A multiple of the identity keeps the computational basis
        """
        values, vectors = eigen_hermitian_2x2(np.eye(2) / 2)
        self.assertTrue(np.array_equal(values, [0.5, 0.5]))
        self.assertTrue(np.array_equal(vectors, np.eye(2)))
        values, vectors = eigen_hermitian(np.diag([0.25, 0.75]).astype(complex))
        self.assertTrue(np.array_equal(values, [0.75, 0.25]))
        self.assertTrue(np.array_equal(np.abs(vectors[:, 0]), [0.0, 1.0]))

    def test_general_eigendecomposition(self):
        """
        Larger Hermitian matrices fall back on eigh, sorted descending
        """
        rho = random_density(self.rng, 5)
        values, vectors = eigen_hermitian(rho)
        self.assertTrue(np.all(np.diff(values) <= 0))
        self.assertTrue(np.allclose((vectors * values) @ np.conj(vectors.T), rho.matrix, atol=1e-12))

    def test_expectation_and_purity(self):
        """
        Tr(rho sigma_z) and Tr(rho^2) of simple states
        """
        self.assertAlmostEqual(DensityOperator.pure(DOWN).expectation(SIGMA_Z), -1.0)
        mixed = DensityOperator.maximally_mixed(2)
        self.assertAlmostEqual(mixed.purity(), 0.5)
        self.assertAlmostEqual(mixed.expectation(SIGMA_X), 0.0)


if __name__ == "__main__":
    unittest.main()
