#
# SPDX-FileCopyrightText: 2024 collisionengine developers
#
# SPDX-License-Identifier: GPL-3.0-or-later
#

"""Haar random unitaries in the Hurwitz parametrization

An elementary rotation E(i, j; phi, psi, chi) is the identity except on
the (i, j) block:

    E[i, i] =  cos(phi) exp(+i psi)     E[i, j] = sin(phi) exp(+i chi)
    E[j, i] = -sin(phi) exp(-i chi)     E[j, j] = cos(phi) exp(-i psi)

A unitary of U(L) is the product

    U = exp(i alpha) E_1 E_2 ... E_{L-1}
    E_s = E(L-1-s, L-s; phi_{s-1,s}, psi_{s-1,s}, 0) ... E(L-2, L-1; phi_{0,s}, psi_{0,s}, chi_s)

(indices from 0). With alpha, psi and chi uniform on [0, 2 pi) and
phi_{r,s} = arcsin(xi ** (1 / (2 r + 2))), xi uniform on [0, 1], U is
distributed with the Haar measure.

Each sample consumes exactly L * L uniforms from the stream, in the order
alpha, then for s = 1 .. L-1: chi_s followed by (xi, psi) for
r = s-1 down to 0.
"""

from dataclasses import dataclass
import numpy as np
from collisionengine.exceptions import ParameterRangeError
from collisionengine.sampler.abstract_sampler import AbstractUnitarySampler

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class ElementaryRotationAngles:
    """
    Indices i < j of the rotated block and the angles of the rotation
    """

    i: int
    j: int
    phi: float = 0.0
    psi: float = 0.0
    chi: float = 0.0

    def __post_init__(self):
        if not 0 <= self.i < self.j:
            raise ParameterRangeError(f"rotation indices must satisfy 0 <= i < j, got ({self.i}, {self.j})")
        if not 0.0 <= self.phi <= np.pi / 2:
            raise ParameterRangeError(f"phi = {self.phi!r} outside [0, pi/2]")
        if not 0.0 <= self.psi < TWO_PI:
            raise ParameterRangeError(f"psi = {self.psi!r} outside [0, 2 pi)")
        if not 0.0 <= self.chi < TWO_PI:
            raise ParameterRangeError(f"chi = {self.chi!r} outside [0, 2 pi)")


def elementary_rotation(dimension: int, angles: ElementaryRotationAngles) -> np.ndarray:
    """
    Elementary rotation E(i, j; phi, psi, chi) of dimension L

    return:
       unitary: complex L x L matrix
    """
    if angles.j >= dimension:
        raise ParameterRangeError(
            f"rotation indices ({angles.i}, {angles.j}) outside dimension {dimension}"
        )
    rotation = np.eye(dimension, dtype=complex)
    cosine, sine = np.cos(angles.phi), np.sin(angles.phi)
    rotation[angles.i, angles.i] = cosine * np.exp(1j * angles.psi)
    rotation[angles.i, angles.j] = sine * np.exp(1j * angles.chi)
    rotation[angles.j, angles.i] = -sine * np.exp(-1j * angles.chi)
    rotation[angles.j, angles.j] = cosine * np.exp(-1j * angles.psi)
    return rotation


def _rotate_columns(unitaries, i, j, phi, psi, chi):
    """
    In-place right multiplication of a stack of matrices by E(i, j; ...)
    """
    cosine, sine = np.cos(phi), np.sin(phi)
    diagonal = cosine * np.exp(1j * psi)
    upper = sine * np.exp(1j * chi)
    column_i = unitaries[:, :, i].copy()
    column_j = unitaries[:, :, j]
    unitaries[:, :, i] = column_i * diagonal[:, np.newaxis] - column_j * np.conj(upper)[:, np.newaxis]
    unitaries[:, :, j] = column_i * upper[:, np.newaxis] + column_j * np.conj(diagonal)[:, np.newaxis]


def hurwitz_unitaries(uniforms: np.ndarray, dimension: int) -> np.ndarray:
    """
    Build unitaries from rows of L * L uniforms in [0, 1)

    return:
       unitaries: complex array of shape (rows, L, L)
    """
    uniforms = np.atleast_2d(np.asarray(uniforms, dtype=float))
    if uniforms.shape[1] != dimension * dimension:
        raise ParameterRangeError(
            f"expected {dimension * dimension} uniforms per unitary, got {uniforms.shape[1]}"
        )
    count = uniforms.shape[0]
    unitaries = np.zeros((count, dimension, dimension), dtype=complex)
    unitaries[:, np.arange(dimension), np.arange(dimension)] = np.exp(1j * TWO_PI * uniforms[:, :1])
    zero = np.zeros(count)
    cursor = 1
    for block in range(1, dimension):
        chi = TWO_PI * uniforms[:, cursor]
        cursor += 1
        for level in range(block - 1, -1, -1):
            phi = np.arcsin(uniforms[:, cursor] ** (1.0 / (2 * level + 2)))
            psi = TWO_PI * uniforms[:, cursor + 1]
            cursor += 2
            _rotate_columns(
                unitaries,
                dimension - 2 - level,
                dimension - 1 - level,
                phi,
                psi,
                chi if level == 0 else zero,
            )
    return unitaries


class HaarSampler(AbstractUnitarySampler):
    """
    Seeded stream of Haar random unitaries of U(L), Hurwitz construction.
    Identical seed and dimension give an identical sequence, whether the
    unitaries are drawn one at a time or in batches.
    """

    @property
    def uniforms_per_sample(self) -> int:
        """Number of uniforms one unitary consumes"""
        return self.dimension * self.dimension

    def draw_uniforms(self, count: int) -> np.ndarray:
        """
        Draw the raw uniforms of the next count unitaries

        return:
           uniforms: array of shape (count, L * L)
        """
        return self.rng.random((count, self.uniforms_per_sample))

    def sample_batch(self, count: int) -> np.ndarray:
        return hurwitz_unitaries(self.draw_uniforms(count), self.dimension)


def sample_haar_unitary(sampler: AbstractUnitarySampler) -> np.ndarray:
    """
    Next Haar random unitary of a sampler stream
    """
    return sampler.sample()
