#
# SPDX-FileCopyrightText: 2024 collisionengine developers
#
# SPDX-License-Identifier: GPL-3.0-or-later
#

"""Haar unitaries from the QR decomposition of Ginibre matrices

Independent of the Hurwitz construction, used to cross-check its
moment statistics.
"""

import numpy as np
from collisionengine.sampler.abstract_sampler import AbstractUnitarySampler


class GinibreSampler(AbstractUnitarySampler):
    """
    Q factor of a complex Gaussian matrix, with the phases of the R
    diagonal moved into Q so that the result is Haar distributed
    """

    def sample_batch(self, count: int) -> np.ndarray:
        size = self.dimension
        parts = self.rng.standard_normal((count, size, size, 2))
        ginibre = (parts[..., 0] + 1j * parts[..., 1]) / np.sqrt(2.0)
        q_factor, r_factor = np.linalg.qr(ginibre)
        diagonal = np.diagonal(r_factor, axis1=-2, axis2=-1)
        phases = diagonal / np.abs(diagonal)
        return q_factor * phases[:, np.newaxis, :]
