#
# SPDX-FileCopyrightText: 2024 collisionengine developers
#
# SPDX-License-Identifier: GPL-3.0-or-later
#

"""Hot and cold collision channels of the working qubit

A hot collision couples the qubit to a fresh qudit of the hot reservoir
through a Haar random unitary of U(2 mu); a cold collision couples it to
a fresh qubit of the cold reservoir through the partial swap
cos(alpha) I + i sin(alpha) S. Both channels are also available as real
4 x 4 transfer matrices acting on (1, x, y, z).
"""

from dataclasses import dataclass, field
import numpy as np
from collisionengine.exceptions import (
    DimensionMismatchError,
    InvalidStateError,
    ParameterRangeError,
)
from collisionengine.linalg_core import (
    DOWN,
    PAULI_BASIS,
    STRUCTURE_TOLERANCE,
    DensityOperator,
    commutator,
    eigen_hermitian,
)

HALF_PI = np.pi / 2
SWAP = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]],
    dtype=complex,
)


def check_swap_angle(alpha: float) -> float:
    """
    Verify 0 <= alpha <= pi/2
    """
    alpha = float(alpha)
    if not 0.0 <= alpha <= HALF_PI:
        raise ParameterRangeError(f"swap angle alpha = {alpha!r} outside [0, pi/2]")
    return alpha


def swap_weights(alpha: float):
    """
    (cos alpha, sin alpha), exact at the endpoints 0 and pi/2
    """
    alpha = check_swap_angle(alpha)
    if alpha == HALF_PI:
        return 0.0, 1.0
    return float(np.cos(alpha)), float(np.sin(alpha))


def ground_state() -> DensityOperator:
    """|down><down|, the ground state of Delta/2 sigma_z"""
    return DensityOperator.pure(DOWN)


def _basis_state(dimension: int) -> DensityOperator:
    vector = np.zeros(dimension, dtype=complex)
    vector[0] = 1.0
    return DensityOperator.pure(vector)


@dataclass(frozen=True)
class ReservoirSpec:
    """
    Hot qudit dimension and state, cold qubit state and swap angle.
    hot_state defaults to |0><0| and cold_state to |down><down|.
    """

    hot_dimension: int
    swap_angle: float
    hot_state: DensityOperator = None
    cold_state: DensityOperator = field(default_factory=ground_state)

    def __post_init__(self):
        if isinstance(self.hot_dimension, bool) or int(self.hot_dimension) != self.hot_dimension \
                or self.hot_dimension < 2:
            raise ParameterRangeError(
                f"hot qudit dimension must be an integer >= 2, got {self.hot_dimension!r}"
            )
        check_swap_angle(self.swap_angle)
        if self.hot_state is None:
            object.__setattr__(self, "hot_state", _basis_state(int(self.hot_dimension)))
        if self.hot_state.dimension != self.hot_dimension:
            raise DimensionMismatchError(
                f"hot state has dimension {self.hot_state.dimension}, expected {self.hot_dimension}"
            )
        if abs(self.hot_state.purity() - 1.0) > STRUCTURE_TOLERANCE:
            raise InvalidStateError("hot reservoir qudits must be in a pure state")
        if self.cold_state.dimension != 2:
            raise DimensionMismatchError(
                f"cold state has dimension {self.cold_state.dimension}, expected 2"
            )

    @property
    def joint_dimension(self) -> int:
        """L = 2 mu"""
        return 2 * int(self.hot_dimension)

    @property
    def hot_vector(self) -> np.ndarray:
        """State vector |c> with hot_state = |c><c|"""
        _, vectors = eigen_hermitian(self.hot_state.matrix)
        return vectors[:, 0]


def partial_swap_unitary(alpha: float) -> np.ndarray:
    """
    cos(alpha) I + i sin(alpha) S on two qubits

    return:
       unitary: complex 4 x 4 matrix
    """
    cosine, sine = swap_weights(alpha)
    return cosine * np.eye(4, dtype=complex) + 1j * sine * SWAP


def cold_collision(rho: DensityOperator, spec: ReservoirSpec) -> DensityOperator:
    """
    State after a partial swap with a fresh cold qubit, traced over the
    cold qubit:
    cos^2(alpha) rho + sin^2(alpha) theta + i sin(alpha) cos(alpha) [theta, rho]
    """
    if rho.dimension != 2:
        raise DimensionMismatchError(f"working fluid must be a qubit, got dimension {rho.dimension}")
    cosine, sine = swap_weights(spec.swap_angle)
    theta = spec.cold_state.matrix
    matrix = (
        cosine**2 * rho.matrix
        + sine**2 * theta
        + 1j * sine * cosine * commutator(theta, rho.matrix)
    )
    return DensityOperator(matrix)


def hot_kraus_operators(unitaries: np.ndarray, spec: ReservoirSpec) -> np.ndarray:
    """
    Kraus operators K_h = (I (x) <h|) U (I (x) |c>) of the hot channel

    return:
       kraus: complex array of shape (..., 2, mu, 2) indexed [s, h, k]
    """
    unitaries = np.asarray(unitaries)
    size = spec.joint_dimension
    if unitaries.shape[-2:] != (size, size):
        raise DimensionMismatchError(
            f"collision unitary of shape {unitaries.shape[-2:]} does not act on dimension {size}"
        )
    # columns of U selected by system basis (x) hot vector
    embedding = np.kron(np.eye(2), spec.hot_vector.reshape(-1, 1))
    isometry = unitaries @ embedding
    return isometry.reshape(unitaries.shape[:-2] + (2, int(spec.hot_dimension), 2))


def apply_hot_unitary(rho: DensityOperator, unitary: np.ndarray, spec: ReservoirSpec) -> DensityOperator:
    """
    Tr_H { R (rho (x) chi) R^dagger } for a given collision unitary R
    """
    if rho.dimension != 2:
        raise DimensionMismatchError(f"working fluid must be a qubit, got dimension {rho.dimension}")
    kraus = hot_kraus_operators(unitary, spec)
    matrix = np.einsum("shk,kl,thl->st", kraus, rho.matrix, np.conj(kraus))
    return DensityOperator(matrix)


def hot_collision(rho: DensityOperator, spec: ReservoirSpec, sampler) -> DensityOperator:
    """
    State after a collision with a fresh hot qudit, the collision
    unitary being the next draw of the sampler
    """
    if sampler.dimension != spec.joint_dimension:
        raise DimensionMismatchError(
            f"sampler dimension {sampler.dimension} differs from 2 mu = {spec.joint_dimension}"
        )
    return apply_hot_unitary(rho, sampler.sample(), spec)


def cycle_map(rho: DensityOperator, spec: ReservoirSpec, sampler) -> DensityOperator:
    """
    One hot collision followed by one cold collision
    """
    return cold_collision(hot_collision(rho, spec, sampler), spec)


def hot_transfer_matrices(unitaries: np.ndarray, spec: ReservoirSpec) -> np.ndarray:
    """
    Transfer matrices T[a, b] = Tr(sigma_a Phi(sigma_b)) / 2 of hot
    channels, one per collision unitary

    return:
       transfer: real array of shape (..., 4, 4)
    """
    kraus = hot_kraus_operators(unitaries, spec)
    images = np.einsum("...shk,bkl,...thl->...bst", kraus, PAULI_BASIS, np.conj(kraus))
    return 0.5 * np.real(np.einsum("ats,...bst->...ab", PAULI_BASIS, images))


def cold_transfer_matrix(spec: ReservoirSpec) -> np.ndarray:
    """
    Transfer matrix of the cold collision channel

    return:
       transfer: real 4 x 4 array
    """
    cosine, sine = swap_weights(spec.swap_angle)
    theta = spec.cold_state.matrix
    images = np.array(
        [
            cosine**2 * pauli
            + sine**2 * np.trace(pauli) * theta
            + 1j * sine * cosine * commutator(theta, pauli)
            for pauli in PAULI_BASIS
        ]
    )
    return 0.5 * np.real(np.einsum("ats,bst->ab", PAULI_BASIS, images))
