#
# SPDX-FileCopyrightText: 2024 collisionengine developers
#
# SPDX-License-Identifier: GPL-3.0-or-later
#

"""
Test suite for the hot and cold collision channels
"""

import unittest
import numpy as np
from collisionengine.collision_model import (
    HALF_PI,
    SWAP,
    ReservoirSpec,
    apply_hot_unitary,
    cold_collision,
    cold_transfer_matrix,
    cycle_map,
    ground_state,
    hot_collision,
    hot_transfer_matrices,
    partial_swap_unitary,
    swap_weights,
)
from collisionengine.exceptions import (
    DimensionMismatchError,
    InvalidStateError,
    ParameterRangeError,
)
from collisionengine.linalg_core import (
    UP,
    DensityOperator,
    bloch_coordinates,
    bloch_from_density,
    dagger,
    is_unitary,
    kron,
    partial_trace,
)
from collisionengine.sampler.hurwitz_sampler import HaarSampler


def random_qubit(rng):
    """Random qubit state, uniform in the Bloch ball"""
    direction = rng.standard_normal(3)
    direction *= rng.random() ** (1 / 3) / np.linalg.norm(direction)
    x, y, z = direction
    return DensityOperator(0.5 * np.array([[1 + z, x - 1j * y], [x + 1j * y, 1 - z]]))


def swap_system_and_cold(hot_dimension):
    """Permutation |s, h, c> -> |c, h, s> of system (x) hot (x) cold"""
    size = 4 * hot_dimension
    permutation = np.zeros((size, size))
    for s in range(2):
        for h in range(hot_dimension):
            for c in range(2):
                source = (s * hot_dimension + h) * 2 + c
                target = (c * hot_dimension + h) * 2 + s
                permutation[target, source] = 1.0
    return permutation


def joint_cycle(rho, spec, unitary):
    """
    One hot then one cold collision, built on the whole
    system (x) hot (x) cold space and traced at the end
    """
    mu = spec.hot_dimension
    joint = kron(kron(rho.matrix, spec.hot_state.matrix), spec.cold_state.matrix)
    hot = np.kron(unitary, np.eye(2))
    cosine, sine = swap_weights(spec.swap_angle)
    cold = cosine * np.eye(4 * mu) + 1j * sine * swap_system_and_cold(mu)
    total = cold @ hot
    return partial_trace(total @ joint @ dagger(total), (2, mu, 2), 0)


class CollisionModelTestSuite(unittest.TestCase):
    """
    Test cases for collisions with hot qudits and cold qubits
    """

    def setUp(self):
        """
        Set up TestSuite
        """
        self.rng = np.random.default_rng(2718)

    def test_partial_swap_unitary(self):
        """
        The partial swap is unitary and is the swap up to i at pi/2
        """
        for alpha in (0.0, np.pi / 10, HALF_PI):
            self.assertTrue(is_unitary(partial_swap_unitary(alpha)))
        swap = partial_swap_unitary(HALF_PI)
        self.assertTrue(np.array_equal(swap, 1j * SWAP))
        self.assertTrue(swap[1, 2] == 1j and swap[0, 0] == 1j and swap[1, 1] == 0.0)
        self.assertTrue(swap_weights(HALF_PI) == (0.0, 1.0))
        self.assertRaises(ParameterRangeError, partial_swap_unitary, 2.0)
        self.assertRaises(ParameterRangeError, partial_swap_unitary, -0.1)

    def test_cold_collision_matches_joint_space(self):
        """
        The closed form equals Tr_C{V (rho (x) theta) V^dagger}
        """
        for alpha in (0.0, 0.3, np.pi / 10, HALF_PI):
            spec = ReservoirSpec(2, alpha, cold_state=random_qubit(self.rng))
            for _ in range(20):
                rho = random_qubit(self.rng)
                swap = partial_swap_unitary(alpha)
                joint = swap @ kron(rho.matrix, spec.cold_state.matrix) @ dagger(swap)
                expected = partial_trace(joint, (2, 2), 0)
                self.assertTrue(np.allclose(cold_collision(rho, spec).matrix, expected, atol=1e-12))

    def test_cold_collision_endpoints(self):
        """
        alpha = 0 leaves the state alone, alpha = pi/2 replaces it by theta exactly
        """
        rho = random_qubit(self.rng)
        self.assertTrue(cold_collision(rho, ReservoirSpec(2, 0.0)).allclose(rho, 0.0))
        swapped = cold_collision(rho, ReservoirSpec(2, HALF_PI))
        self.assertTrue(np.array_equal(swapped.matrix, ground_state().matrix))

    def test_cold_steady_state_is_theta(self):
        """
        Repeated cold collisions converge to the cold reservoir state
        """
        spec = ReservoirSpec(2, np.pi / 10)
        rho = DensityOperator.pure(UP)
        for _ in range(400):
            rho = cold_collision(rho, spec)
        self.assertTrue(rho.allclose(ground_state(), 1e-10))

    def test_hot_collision_matches_kronecker_construction(self):
        """
        The Kraus form equals Tr_H{R (rho (x) chi) R^dagger}
        """
        for mu in (2, 3, 4):
            hot_state = DensityOperator.pure(self.rng.standard_normal(mu) + 1j * self.rng.standard_normal(mu))
            spec = ReservoirSpec(mu, np.pi / 10, hot_state=hot_state)
            unitaries = HaarSampler(2 * mu, mu).sample_batch(20)
            for unitary in unitaries:
                rho = random_qubit(self.rng)
                joint = unitary @ kron(rho.matrix, hot_state.matrix) @ dagger(unitary)
                expected = partial_trace(joint, (2, mu), 0)
                result = apply_hot_unitary(rho, unitary, spec)
                self.assertTrue(np.allclose(result.matrix, expected, atol=1e-12))

    def test_cycle_map_matches_joint_oracle(self):
        """
        Sequential hot and cold collisions agree with the monolithic
        joint-space construction to 1e-10, 10^3 trials per dimension
        """
        for mu in (2, 4):
            spec = ReservoirSpec(mu, np.pi / 10)
            sampler = HaarSampler(2 * mu, 1000 + mu)
            oracle = HaarSampler(2 * mu, 1000 + mu)
            for _ in range(1000):
                rho = random_qubit(self.rng)
                result = cycle_map(rho, spec, sampler)
                expected = joint_cycle(rho, spec, oracle.sample())
                self.assertTrue(np.max(np.abs(result.matrix - expected)) <= 1e-10)

    def test_outputs_are_states(self):
        """
        Both channels map states to Hermitian unit-trace positive matrices
        """
        spec = ReservoirSpec(3, 0.7)
        sampler = HaarSampler(6, 5)
        rho = random_qubit(self.rng)
        for _ in range(200):
            rho = cycle_map(rho, spec, sampler)
            self.assertAlmostEqual(np.trace(rho.matrix).real, 1.0, places=12)
            self.assertTrue(np.linalg.eigvalsh(rho.matrix)[0] >= -1e-12)

    def test_transfer_matrices_match_channels(self):
        """
        Transfer matrices reproduce both channels on Bloch coordinates
        """
        spec = ReservoirSpec(4, np.pi / 10)
        unitaries = HaarSampler(8, 17).sample_batch(50)
        transfers = hot_transfer_matrices(unitaries, spec)
        cold = cold_transfer_matrix(spec)
        self.assertTrue(transfers.shape == (50, 4, 4))
        for unitary, transfer in zip(unitaries, transfers):
            rho = random_qubit(self.rng)
            hot_image = apply_hot_unitary(rho, unitary, spec)
            coordinates = transfer @ bloch_coordinates(rho.matrix)
            self.assertTrue(np.allclose(coordinates, bloch_coordinates(hot_image.matrix), atol=1e-12))
            cold_image = cold_collision(hot_image, spec)
            self.assertTrue(np.allclose(cold @ coordinates, bloch_coordinates(cold_image.matrix), atol=1e-12))
        # trace preservation: the first row is (1, 0, 0, 0)
        self.assertTrue(np.allclose(transfers[:, 0], [1.0, 0.0, 0.0, 0.0], atol=1e-12))

    def test_haar_average_is_maximally_mixed(self):
        """
        The Haar-averaged hot output is I/2: mean Bloch vector zero
        """
        spec = ReservoirSpec(2, np.pi / 10)
        unitaries = HaarSampler(4, 99).sample_batch(10000)
        start = bloch_coordinates(ground_state().matrix)
        images = hot_transfer_matrices(unitaries, spec) @ start
        means = images[:, 1:].mean(axis=0)
        stderrs = images[:, 1:].std(axis=0, ddof=1) / np.sqrt(images.shape[0])
        self.assertTrue(np.all(np.abs(means) <= 3.5 * stderrs))

    def test_hot_output_purity_decreases_with_mu(self):
        """
        Mean purity after one hot collision is (1 + 3/(2 mu + 1)) / 2
        for a pure input, smaller at larger mu
        """
        purities = []
        for mu in (2, 4, 8):
            spec = ReservoirSpec(mu, np.pi / 10)
            unitaries = HaarSampler(2 * mu, 7).sample_batch(4000)
            images = hot_transfer_matrices(unitaries, spec) @ bloch_coordinates(ground_state().matrix)
            purity = 0.5 * (1.0 + np.sum(images[:, 1:] ** 2, axis=1))
            stderr = purity.std(ddof=1) / np.sqrt(purity.size)
            self.assertTrue(abs(purity.mean() - 0.5 * (1.0 + 3.0 / (2 * mu + 1))) <= 4.0 * stderr)
            purities.append(purity.mean())
        self.assertTrue(purities[0] > purities[1] > purities[2])

    def test_sampler_dimension_must_match(self):
        """
        A sampler of the wrong dimension is rejected
        """
        spec = ReservoirSpec(2, 0.1)
        self.assertRaises(DimensionMismatchError, hot_collision, ground_state(), spec, HaarSampler(6, 1))
        self.assertRaises(DimensionMismatchError, hot_transfer_matrices, np.eye(6), spec)

    def test_reservoir_spec_validation(self):
        """
        Dimension, swap angle and purity of the hot state are checked
        """
        self.assertRaises(ParameterRangeError, ReservoirSpec, 1, 0.1)
        self.assertRaises(ParameterRangeError, ReservoirSpec, 2, 1.6)
        self.assertRaises(InvalidStateError, ReservoirSpec, 2, 0.1, DensityOperator.maximally_mixed(2))
        self.assertRaises(DimensionMismatchError, ReservoirSpec, 3, 0.1, DensityOperator.pure([1, 0]))
        spec = ReservoirSpec(3, 0.1)
        self.assertTrue(spec.joint_dimension == 6)
        self.assertTrue(np.allclose(np.abs(spec.hot_vector), [1.0, 0.0, 0.0]))
        self.assertTrue(bloch_from_density(spec.cold_state).z == -1.0)


if __name__ == "__main__":
    unittest.main()
