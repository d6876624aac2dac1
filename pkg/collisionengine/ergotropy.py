#
# SPDX-FileCopyrightText: 2024 collisionengine developers
#
# SPDX-License-Identifier: GPL-3.0-or-later
#

"""Ergotropy and passive states

The passive state of rho for a Hamiltonian H puts the eigenvalues of rho,
sorted in descending order, on the eigenvectors of H sorted by ascending
energy. The ergotropy is Tr(rho H) - Tr(pi H). For a qubit with
H = Delta/2 sigma_z it equals (Delta/2)(r + z).
"""

from dataclasses import dataclass
import numpy as np
from collisionengine.exceptions import (
    DimensionMismatchError,
    InvalidStateError,
    ParameterRangeError,
)
from collisionengine.linalg_core import (
    DOWN,
    STRUCTURE_TOLERANCE,
    UP,
    BlochVector,
    DensityOperator,
    eigen_hermitian,
    is_unitary,
)


@dataclass(frozen=True, eq=False)
class HamiltonianSpec:
    """
    Energies in ascending order and the matching eigenvectors as the
    columns of eigenbasis
    """

    energies: tuple
    eigenbasis: np.ndarray

    def __post_init__(self):
        energies = np.asarray(self.energies, dtype=float)
        if energies.ndim != 1 or energies.size < 2:
            raise DimensionMismatchError("a Hamiltonian needs at least two energies")
        if np.any(np.diff(energies) < 0):
            raise ParameterRangeError(f"energies {tuple(energies)} are not in ascending order")
        basis = np.asarray(self.eigenbasis, dtype=complex)
        if basis.shape != (energies.size, energies.size) or not is_unitary(basis):
            raise DimensionMismatchError("eigenbasis must be a unitary matching the energies")
        object.__setattr__(self, "energies", tuple(float(energy) for energy in energies))
        object.__setattr__(self, "eigenbasis", basis)

    @classmethod
    def qubit(cls, gap: float) -> "HamiltonianSpec":
        """
        H = gap/2 sigma_z, ground state |down>
        """
        if not gap > 0:
            raise ParameterRangeError(f"qubit gap must be positive, got {gap!r}")
        return cls((-0.5 * gap, 0.5 * gap), np.column_stack([DOWN, UP]))

    @classmethod
    def diagonal(cls, energies) -> "HamiltonianSpec":
        """
        Hamiltonian diagonal in the computational basis, energies ascending
        """
        energies = tuple(energies)
        return cls(energies, np.eye(len(energies), dtype=complex))

    @property
    def dimension(self) -> int:
        """Hilbert space dimension"""
        return len(self.energies)

    @property
    def matrix(self) -> np.ndarray:
        """H as a matrix in the computational basis"""
        return (self.eigenbasis * np.array(self.energies)) @ np.conj(self.eigenbasis.T)


def _check_dimensions(rho: DensityOperator, hamiltonian: HamiltonianSpec):
    if rho.dimension != hamiltonian.dimension:
        raise DimensionMismatchError(
            f"state of dimension {rho.dimension} and Hamiltonian of dimension {hamiltonian.dimension}"
        )


def passive_state(rho: DensityOperator, hamiltonian: HamiltonianSpec) -> DensityOperator:
    """
    Passive state with the spectrum of rho

    return:
       pi: sum_n r_n |e_n><e_n|, r_n descending, e_n ascending
    """
    _check_dimensions(rho, hamiltonian)
    populations, _ = eigen_hermitian(rho.matrix)
    basis = hamiltonian.eigenbasis
    return DensityOperator((basis * populations) @ np.conj(basis.T))


def ergotropy(rho: DensityOperator, hamiltonian: HamiltonianSpec) -> float:
    """
    Maximum work extractable from rho by a unitary

    return:
       ergotropy: Tr(rho H) - Tr(pi H) >= 0
    """
    _check_dimensions(rho, hamiltonian)
    populations, _ = eigen_hermitian(rho.matrix)
    passive_energy = float(np.dot(populations, hamiltonian.energies))
    return max(0.0, rho.expectation(hamiltonian.matrix) - passive_energy)


def ergotropy_qubit_bloch(bloch, gap: float):
    """
    Qubit ergotropy (gap/2)(r + z) for H = gap/2 sigma_z. Accepts a
    BlochVector or an array of (x, y, z) rows.

    return:
       ergotropy: float, or an array with one value per row
    """
    if not gap > 0:
        raise ParameterRangeError(f"qubit gap must be positive, got {gap!r}")
    if isinstance(bloch, BlochVector):
        return 0.5 * gap * (bloch.norm + bloch.z)
    coordinates = np.asarray(bloch, dtype=float)
    norms = np.linalg.norm(coordinates, axis=-1)
    if np.any(norms > 1.0 + STRUCTURE_TOLERANCE):
        raise InvalidStateError(f"Bloch vector norm {np.max(norms)!r} exceeds 1")
    return np.maximum(0.0, 0.5 * gap * (norms + coordinates[..., 2]))
