#
# SPDX-FileCopyrightText: 2024 collisionengine developers
#
# SPDX-License-Identifier: GPL-3.0-or-later
#

"""Dense complex matrix primitives for qubit and qudit states

The computational basis of a qubit is ordered (|up>, |down>) with
sigma_z |up> = +|up>, so the ground state of H = Delta/2 sigma_z is |down>.
Joint spaces are ordered system (x) hot qudit (x) cold qubit.
"""

from dataclasses import dataclass
import numpy as np
from collisionengine.exceptions import (
    DimensionMismatchError,
    InvalidStateError,
)

STRUCTURE_TOLERANCE = 1e-10
ROUND_TRIP_TOLERANCE = 1e-12

IDENTITY = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
# (I, sigma_x, sigma_y, sigma_z), the basis of qubit transfer matrices
PAULI_BASIS = np.stack([IDENTITY, SIGMA_X, SIGMA_Y, SIGMA_Z])

UP = np.array([1, 0], dtype=complex)
DOWN = np.array([0, 1], dtype=complex)


def as_complex_matrix(entries) -> np.ndarray:
    """
    Convert entries to a read-only two-dimensional complex array

    return:
       matrix: complex ndarray with finite entries
    """
    matrix = np.array(entries, dtype=complex)
    if matrix.ndim != 2 or 0 in matrix.shape:
        raise DimensionMismatchError(
            f"expected a non-empty two-dimensional matrix, got shape {matrix.shape}"
        )
    if not np.all(np.isfinite(matrix)):
        raise InvalidStateError("matrix contains NaN or infinite entries")
    matrix.setflags(write=False)
    return matrix


def dagger(matrix: np.ndarray) -> np.ndarray:
    """Conjugate transpose over the last two axes"""
    return np.conj(np.swapaxes(matrix, -1, -2))


def commutator(first: np.ndarray, second: np.ndarray) -> np.ndarray:
    """[first, second]"""
    return first @ second - second @ first


def is_unitary(matrix: np.ndarray, tolerance: float = ROUND_TRIP_TOLERANCE) -> bool:
    """
    Check U^dagger U = I entrywise within tolerance, for a single matrix
    or a stack of matrices
    """
    matrix = np.asarray(matrix)
    identity = np.eye(matrix.shape[-1])
    return bool(np.max(np.abs(dagger(matrix) @ matrix - identity)) <= tolerance)


def kron(first, second) -> np.ndarray:
    """
    Kronecker product, (a (x) b)[i*p + k, j*q + l] = a[i, j] b[k, l]

    return:
       matrix: product of dimension (m*p) x (n*q)
    """
    return as_complex_matrix(np.kron(as_complex_matrix(first), as_complex_matrix(second)))


def partial_trace(joint, dims, keep: int) -> np.ndarray:
    """
    Trace out every tensor factor of a square joint matrix except one

    return:
       matrix: reduced matrix of dimension dims[keep]
    """
    joint = np.asarray(joint, dtype=complex)
    dims = [int(dim) for dim in dims]
    if any(dim < 1 for dim in dims):
        raise DimensionMismatchError(f"factor dimensions must be positive, got {dims}")
    total = int(np.prod(dims))
    if joint.ndim != 2 or joint.shape != (total, total):
        raise DimensionMismatchError(
            f"joint matrix of shape {joint.shape} does not match factors {dims}"
        )
    if not 0 <= keep < len(dims):
        raise DimensionMismatchError(
            f"factor index {keep} outside 0..{len(dims) - 1}"
        )
    factors = len(dims)
    tensor = joint.reshape(dims + dims)
    # move the kept factor to the front on both sides, then trace the rest
    order = [keep] + [k for k in range(factors) if k != keep]
    tensor = np.transpose(tensor, order + [factors + k for k in order])
    rest = total // dims[keep]
    tensor = tensor.reshape(dims[keep], rest, dims[keep], rest)
    return np.einsum("arbr->ab", tensor)


@dataclass(frozen=True)
class BlochVector:
    """
    Bloch vector (x, y, z) of a qubit, rho = (I + x sigma_x + y sigma_y + z sigma_z) / 2
    """

    x: float
    y: float
    z: float

    def __post_init__(self):
        if self.norm > 1.0 + STRUCTURE_TOLERANCE:
            raise InvalidStateError(
                f"Bloch vector norm {self.norm!r} exceeds 1"
            )

    @property
    def norm(self) -> float:
        """Length r of the Bloch vector"""
        return float(np.sqrt(self.x**2 + self.y**2 + self.z**2))

    def as_array(self) -> np.ndarray:
        """(x, y, z) as a float array"""
        return np.array([self.x, self.y, self.z], dtype=float)


class DensityOperator:
    """
    Hermitian, positive semidefinite, unit-trace matrix. Instances are
    immutable once validated.
    """

    def __init__(self, matrix, check: bool = True):
        self.matrix = as_complex_matrix(matrix)
        if check:
            self.__verify_density_matrix__(self.matrix)

    @staticmethod
    def __verify_density_matrix__(matrix: np.ndarray):
        """
        Verify squareness, dimension, hermiticity, trace and positivity
        """
        rows, cols = matrix.shape
        if rows != cols or rows < 2:
            raise InvalidStateError(
                f"density operator must be square with dimension >= 2, got {matrix.shape}"
            )
        asymmetry = np.max(np.abs(matrix - dagger(matrix)))
        if asymmetry > STRUCTURE_TOLERANCE:
            raise InvalidStateError(f"not Hermitian (deviation {asymmetry:.3e})")
        trace = np.trace(matrix)
        if abs(trace - 1.0) > STRUCTURE_TOLERANCE:
            raise InvalidStateError(f"trace is {trace.real!r}, expected 1")
        lowest = np.linalg.eigvalsh(matrix)[0]
        if lowest < -STRUCTURE_TOLERANCE:
            raise InvalidStateError(f"negative eigenvalue {lowest!r}")

    @classmethod
    def pure(cls, vector) -> "DensityOperator":
        """
        Projector onto a normalized copy of a state vector
        """
        vector = np.asarray(vector, dtype=complex)
        vector = vector / np.linalg.norm(vector)
        return cls(np.outer(vector, np.conj(vector)))

    @classmethod
    def maximally_mixed(cls, dimension: int) -> "DensityOperator":
        """I / d"""
        return cls(np.eye(dimension, dtype=complex) / dimension)

    @property
    def dimension(self) -> int:
        """Hilbert space dimension"""
        return self.matrix.shape[0]

    def purity(self) -> float:
        """Tr(rho^2)"""
        return float(np.real(np.trace(self.matrix @ self.matrix)))

    def expectation(self, operator) -> float:
        """Tr(rho A) for Hermitian A"""
        return float(np.real(np.trace(self.matrix @ np.asarray(operator))))

    def allclose(self, other: "DensityOperator", tolerance: float = STRUCTURE_TOLERANCE) -> bool:
        """Entrywise comparison with another density operator"""
        return self.dimension == other.dimension and bool(
            np.max(np.abs(self.matrix - other.matrix)) <= tolerance
        )

    def __repr__(self):
        return f"DensityOperator(dimension={self.dimension}, purity={self.purity():.6f})"


def eigen_hermitian_2x2(rho):
    """
    Analytic eigendecomposition of a 2x2 Hermitian matrix

    Eigenvalues are returned in descending order. Equal eigenvalues of a
    diagonal input keep the input basis order.

    return:
       (values, vectors): eigenvalues and the matching orthonormal
       eigenvectors as the columns of a unitary matrix
    """
    matrix = rho.matrix if isinstance(rho, DensityOperator) else np.asarray(rho, dtype=complex)
    if matrix.shape != (2, 2):
        raise DimensionMismatchError(f"expected a 2x2 matrix, got {matrix.shape}")
    first, second = matrix[0, 0].real, matrix[1, 1].real
    offdiagonal = matrix[0, 1]
    if offdiagonal == 0:
        if first >= second:
            return np.array([first, second]), np.eye(2, dtype=complex)
        return np.array([second, first]), np.array([[0, 1], [1, 0]], dtype=complex)
    mean = 0.5 * (first + second)
    half_difference = 0.5 * (first - second)
    radius = np.hypot(half_difference, abs(offdiagonal))
    if half_difference >= 0:
        upper = np.array([half_difference + radius, np.conj(offdiagonal)])
    else:
        upper = np.array([offdiagonal, radius - half_difference])
    upper = upper / np.linalg.norm(upper)
    lower = np.array([-np.conj(upper[1]), np.conj(upper[0])])
    vectors = np.column_stack([upper, lower])
    return np.array([mean + radius, mean - radius]), vectors


def eigen_hermitian(matrix):
    """
    Eigendecomposition of a Hermitian matrix of any dimension, eigenvalues
    descending. Dimension 2 takes the analytic path.

    return:
       (values, vectors): eigenvalues and eigenvector columns
    """
    matrix = matrix.matrix if isinstance(matrix, DensityOperator) else np.asarray(matrix, dtype=complex)
    if matrix.shape == (2, 2):
        return eigen_hermitian_2x2(matrix)
    values, vectors = np.linalg.eigh(matrix)
    order = np.argsort(-values, kind="stable")
    return values[order], vectors[:, order]


def bloch_from_density(rho) -> BlochVector:
    """
    Bloch vector of a qubit state, x = Tr(rho sigma_x) and so on
    """
    matrix = rho.matrix if isinstance(rho, DensityOperator) else np.asarray(rho, dtype=complex)
    if matrix.shape != (2, 2):
        raise DimensionMismatchError(f"expected a qubit state, got shape {matrix.shape}")
    return BlochVector(
        x=float(2.0 * matrix[0, 1].real),
        y=float(-2.0 * matrix[0, 1].imag),
        z=float((matrix[0, 0] - matrix[1, 1]).real),
    )


def density_from_bloch(bloch: BlochVector) -> DensityOperator:
    """
    Qubit state (I + r.sigma) / 2 of a Bloch vector
    """
    if not isinstance(bloch, BlochVector):
        bloch = BlochVector(*bloch)
    matrix = 0.5 * np.array(
        [
            [1.0 + bloch.z, bloch.x - 1j * bloch.y],
            [bloch.x + 1j * bloch.y, 1.0 - bloch.z],
        ],
        dtype=complex,
    )
    return DensityOperator(matrix)


def bloch_coordinates(matrices: np.ndarray) -> np.ndarray:
    """
    Vectorized (1, x, y, z) coordinates of a stack of 2x2 matrices

    return:
       coordinates: real array of shape (..., 4)
    """
    return np.real(np.einsum("aij,...ji->...a", PAULI_BASIS, matrices))


def matrices_from_coordinates(coordinates: np.ndarray) -> np.ndarray:
    """
    Inverse of bloch_coordinates: (c0 I + x sigma_x + y sigma_y + z sigma_z) / 2
    """
    return 0.5 * np.einsum("...a,aij->...ij", np.asarray(coordinates, dtype=float), PAULI_BASIS)
