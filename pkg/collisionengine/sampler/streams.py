#
# SPDX-FileCopyrightText: 2024 collisionengine developers
#
# SPDX-License-Identifier: GPL-3.0-or-later
#

"""Reproducible pseudo-random streams

Every stream is a numpy PCG64 generator (128-bit state). Child streams
are derived from (master_seed, index) through SeedSequence spawn keys,
so trajectory i of a run gets the same numbers whatever the order or
the process in which trajectories are simulated.
"""

import numpy as np
from collisionengine.exceptions import ParameterRangeError

MAX_SEED = 2**64 - 1


def check_master_seed(master_seed) -> int:
    """
    Verify that a master seed is an unsigned 64-bit integer
    """
    if isinstance(master_seed, bool) or not isinstance(master_seed, (int, np.integer)):
        raise ParameterRangeError(f"master seed must be an integer, got {master_seed!r}")
    if not 0 <= int(master_seed) <= MAX_SEED:
        raise ParameterRangeError(f"master seed {master_seed} outside [0, 2**64 - 1]")
    return int(master_seed)


def as_seed_sequence(seed) -> np.random.SeedSequence:
    """
    Accept a SeedSequence or an unsigned 64-bit master seed
    """
    if isinstance(seed, np.random.SeedSequence):
        return seed
    return np.random.SeedSequence(check_master_seed(seed))


def child_seed_sequence(master_seed, index: int) -> np.random.SeedSequence:
    """
    Seed sequence of the child stream number index of a master seed
    """
    if index < 0:
        raise ParameterRangeError(f"stream index must be nonnegative, got {index}")
    return np.random.SeedSequence(check_master_seed(master_seed), spawn_key=(int(index),))


def make_generator(seed) -> np.random.Generator:
    """
    PCG64 generator for a seed sequence or a master seed
    """
    return np.random.Generator(np.random.PCG64(as_seed_sequence(seed)))
