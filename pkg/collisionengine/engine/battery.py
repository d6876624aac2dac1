#
# SPDX-FileCopyrightText: 2024 collisionengine developers
#
# SPDX-License-Identifier: GPL-3.0-or-later
#

"""Charge and discharge of a qubit battery by alternating collisions

Every trajectory starts from the same state and alternates a hot
collision (charging) with a cold collision (discharging), hot first.
Trajectory t draws its hot collisions from the child stream
(master_seed, t).
"""

from dataclasses import dataclass, field
from functools import partial
import logging
import numpy as np
from collisionengine.collision_model import (
    ReservoirSpec,
    cold_transfer_matrix,
    ground_state,
    hot_transfer_matrices,
)
from collisionengine.engine.ensemble import chunk_size, run_tasks
from collisionengine.ergotropy import ergotropy_qubit_bloch
from collisionengine.exceptions import ParameterRangeError
from collisionengine.linalg_core import DensityOperator, bloch_coordinates
from collisionengine.sampler.hurwitz_sampler import HaarSampler, hurwitz_unitaries
from collisionengine.sampler.streams import check_master_seed, child_seed_sequence

logger = logging.getLogger(__name__)

HOT = "hot"
COLD = "cold"


@dataclass(frozen=True)
class BatteryRunConfig:
    """
    Parameters of an ensemble of battery trajectories. The battery starts
    empty, in the ground state, unless initial_state is given.
    """

    hot_dimension: int
    swap_angle: float
    gap: float
    n_collisions: int
    n_trajectories: int
    master_seed: int
    initial_state: DensityOperator = field(default_factory=ground_state)

    def __post_init__(self):
        if self.n_collisions < 1:
            raise ParameterRangeError(f"n_collisions must be >= 1, got {self.n_collisions}")
        if self.n_trajectories < 1:
            raise ParameterRangeError(f"n_trajectories must be >= 1, got {self.n_trajectories}")
        if not self.gap > 0:
            raise ParameterRangeError(f"qubit gap must be positive, got {self.gap!r}")
        if self.initial_state.dimension != 2:
            raise ParameterRangeError("the battery is a qubit")
        check_master_seed(self.master_seed)
        self.reservoir_spec()

    def reservoir_spec(self) -> ReservoirSpec:
        """Reservoirs of the run"""
        return ReservoirSpec(self.hot_dimension, self.swap_angle)

    def reservoir_labels(self) -> list:
        """Reservoir met at each collision"""
        return [HOT if index % 2 == 0 else COLD for index in range(self.n_collisions)]


@dataclass(frozen=True, eq=False)
class BatteryResult:
    """
    Coordinates (1, x, y, z) of every trajectory after every collision,
    shape (n_trajectories, n_collisions, 4)
    """

    config: BatteryRunConfig
    coordinates: np.ndarray

    @property
    def bloch(self) -> np.ndarray:
        """Bloch vectors, shape (n_trajectories, n_collisions, 3)"""
        return self.coordinates[..., 1:]

    def ergotropy(self) -> np.ndarray:
        """Ergotropy after every collision"""
        return ergotropy_qubit_bloch(self.bloch, self.config.gap)

    def energy(self) -> np.ndarray:
        """Mean energy Tr(rho H) = gap z / 2 after every collision"""
        return 0.5 * self.config.gap * self.coordinates[..., 3]

    def coherence(self) -> np.ndarray:
        """Magnitude sqrt(x^2 + y^2) of the coherences"""
        return np.hypot(self.coordinates[..., 1], self.coordinates[..., 2])

    def purity(self) -> np.ndarray:
        """Tr(rho^2) = (1 + r^2) / 2"""
        return 0.5 * (1.0 + np.sum(self.bloch**2, axis=-1))

    def mean_ergotropy(self) -> np.ndarray:
        """Ensemble-averaged ergotropy per collision"""
        return self.ergotropy().mean(axis=0)

    def ergotropy_stderr(self) -> np.ndarray:
        """Standard error of the ensemble-averaged ergotropy"""
        if self.config.n_trajectories < 2:
            return np.zeros(self.config.n_collisions)
        return self.ergotropy().std(axis=0, ddof=1) / np.sqrt(self.config.n_trajectories)


def _trajectory_blocks(config: BatteryRunConfig) -> list:
    size = chunk_size(2 * config.hot_dimension, cap=1000)
    return [
        (start, min(start + size, config.n_trajectories))
        for start in range(0, config.n_trajectories, size)
    ]


def run_trajectory_block(config: BatteryRunConfig, block) -> np.ndarray:
    """
    Simulate trajectories start .. stop - 1 of a run

    return:
       coordinates: array of shape (stop - start, n_collisions, 4)
    """
    start, stop = block
    spec = config.reservoir_spec()
    dimension = spec.joint_dimension
    samplers = [
        HaarSampler(dimension, child_seed_sequence(config.master_seed, index))
        for index in range(start, stop)
    ]
    cold = cold_transfer_matrix(spec)
    state = np.tile(bloch_coordinates(config.initial_state.matrix), (stop - start, 1))
    coordinates = np.empty((stop - start, config.n_collisions, 4))
    for collision in range(config.n_collisions):
        if collision % 2 == 0:
            # one unitary per trajectory, drawn only when its hot collision comes
            uniforms = np.concatenate([sampler.draw_uniforms(1) for sampler in samplers])
            unitaries = hurwitz_unitaries(uniforms, dimension)
            state = np.einsum("nab,nb->na", hot_transfer_matrices(unitaries, spec), state)
        else:
            state = state @ cold.T
        coordinates[:, collision] = state
    return coordinates


def run_battery(config: BatteryRunConfig, workers: int = 1) -> BatteryResult:
    """
    Simulate every trajectory and record the state after each collision
    """
    blocks = _trajectory_blocks(config)
    logger.info(
        "battery run: mu=%d alpha=%.6g, %d trajectories x %d collisions in %d blocks",
        config.hot_dimension,
        config.swap_angle,
        config.n_trajectories,
        config.n_collisions,
        len(blocks),
    )
    parts = run_tasks(partial(run_trajectory_block, config), blocks, workers)
    return BatteryResult(config, np.concatenate(parts, axis=0))
