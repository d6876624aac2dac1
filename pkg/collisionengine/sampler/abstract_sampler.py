#
# SPDX-FileCopyrightText: 2024 collisionengine developers
#
# SPDX-License-Identifier: GPL-3.0-or-later
#

"""Abstract unitary sampler class and methods
"""

from abc import ABC, abstractmethod
import numpy as np
from collisionengine.exceptions import ParameterRangeError
from collisionengine.sampler.streams import as_seed_sequence, make_generator


class AbstractUnitarySampler(ABC):
    """
    Stateful stream of random L x L unitary matrices. A sampler has a
    single owner; parallel work uses one sampler per child stream.
    """

    def __init__(self, dimension: int, seed):
        if isinstance(dimension, bool) or int(dimension) != dimension or dimension < 2:
            raise ParameterRangeError(f"unitary dimension must be an integer >= 2, got {dimension!r}")
        self.dimension = int(dimension)
        self.seed_sequence = as_seed_sequence(seed)
        self.rng = make_generator(self.seed_sequence)

    @abstractmethod
    def sample_batch(self, count: int) -> np.ndarray:
        """
        Draw count unitaries from the stream

        return:
           unitaries: complex array of shape (count, L, L)
        """

    def sample(self) -> np.ndarray:
        """
        Draw the next unitary of the stream

        return:
           unitary: complex array of shape (L, L)
        """
        return self.sample_batch(1)[0]

    def __repr__(self):
        return (
            f"{type(self).__name__}(dimension={self.dimension}, "
            f"entropy={self.seed_sequence.entropy}, "
            f"spawn_key={self.seed_sequence.spawn_key})"
        )
