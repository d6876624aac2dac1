#
# SPDX-FileCopyrightText: 2024 collisionengine developers
#
# SPDX-License-Identifier: GPL-3.0-or-later
#

"""Four-stroke quantum Otto engine fuelled by random collisions

    A  hot collision at H1 = Delta1/2 sigma_z     Q_in  = Delta1/2 (z' - z)
    B  gap Delta1 -> Delta2, state unchanged      W_out = z'/2 (Delta1 - Delta2)
    C  cold collision at H2 = Delta2/2 sigma_z    Q_out = Delta2/2 (z'' - z')
    D  gap Delta2 -> Delta1, state unchanged      W_in  = z''/2 (Delta2 - Delta1)

Work terms are work performed by the system; W = W_in + W_out. The state
after stroke D starts the next cycle. Chain c draws its collisions from
the child stream (master_seed, c).
"""

from dataclasses import dataclass, field
from functools import partial
import logging
import numpy as np
from collisionengine.collision_model import (
    ReservoirSpec,
    cold_collision,
    cold_transfer_matrix,
    ground_state,
    hot_collision,
    hot_transfer_matrices,
)
from collisionengine.engine.ensemble import chunk_size, run_tasks
from collisionengine.exceptions import InsufficientDataError, ParameterRangeError
from collisionengine.linalg_core import DensityOperator, bloch_coordinates, bloch_from_density
from collisionengine.sampler.hurwitz_sampler import HaarSampler
from collisionengine.sampler.streams import check_master_seed, child_seed_sequence
from collisionengine.statistics.fitting import fit_gaussian
from collisionengine.statistics.ratio_distribution import RatioPdfParams

logger = logging.getLogger(__name__)

# |Q_in| below which a cycle gets no efficiency
HEAT_FLOOR = 1e-12


def check_gaps(delta1: float, delta2: float):
    """
    Verify Delta1 > Delta2 > 0
    """
    if not delta1 > delta2 > 0:
        raise ParameterRangeError(
            f"gaps must satisfy delta1 > delta2 > 0, got delta1={delta1!r}, delta2={delta2!r}"
        )


@dataclass(frozen=True)
class OttoParams:
    """
    Parameters of an Otto run. n_cycles cycles are kept per chain after
    n_discard thermalization cycles.
    """

    delta1: float
    delta2: float
    hot_dimension: int
    swap_angle: float
    n_cycles: int
    master_seed: int
    n_discard: int = 10
    n_chains: int = 1
    initial_state: DensityOperator = field(default_factory=ground_state)

    def __post_init__(self):
        check_gaps(self.delta1, self.delta2)
        if self.n_cycles < 1:
            raise ParameterRangeError(f"n_cycles must be >= 1, got {self.n_cycles}")
        if self.n_discard < 0:
            raise ParameterRangeError(f"n_discard must be >= 0, got {self.n_discard}")
        if self.n_chains < 1:
            raise ParameterRangeError(f"n_chains must be >= 1, got {self.n_chains}")
        if self.initial_state.dimension != 2:
            raise ParameterRangeError("the working fluid is a qubit")
        check_master_seed(self.master_seed)
        self.reservoir_spec()

    def reservoir_spec(self) -> ReservoirSpec:
        """Reservoirs of the run"""
        return ReservoirSpec(self.hot_dimension, self.swap_angle)

    @property
    def analytic_efficiency(self) -> float:
        """1 - Delta2 / Delta1"""
        return 1.0 - self.delta2 / self.delta1


@dataclass(frozen=True)
class CycleRecord:
    """
    Heat, work, efficiency and the z components of the Bloch vector at
    the start of a cycle (z), after stroke A (z_prime) and after stroke
    C (z_double_prime). efficiency is NaN when efficiency_flagged is set.
    """

    q_in: float
    w_out: float
    q_out: float
    w_in: float
    work: float
    efficiency: float
    efficiency_flagged: bool
    z: float
    z_prime: float
    z_double_prime: float

    @classmethod
    def from_bloch(cls, z, z_prime, z_double_prime, delta1, delta2) -> "CycleRecord":
        """
        Build a record from the three z components of a cycle
        """
        q_in = 0.5 * delta1 * (z_prime - z)
        w_out = 0.5 * z_prime * (delta1 - delta2)
        q_out = 0.5 * delta2 * (z_double_prime - z_prime)
        w_in = 0.5 * z_double_prime * (delta2 - delta1)
        work = w_in + w_out
        flagged = abs(q_in) < HEAT_FLOOR
        return cls(
            float(q_in), float(w_out), float(q_out), float(w_in), float(work),
            float("nan") if flagged else float(work / q_in), bool(flagged),
            float(z), float(z_prime), float(z_double_prime),
        )


def stroke_a(rho: DensityOperator, delta1: float, sampler, spec: ReservoirSpec):
    """
    Hot collision at fixed Hamiltonian H1

    return:
       (rho_prime, q_in)
    """
    rho_prime = hot_collision(rho, spec, sampler)
    q_in = 0.5 * delta1 * (bloch_from_density(rho_prime).z - bloch_from_density(rho).z)
    return rho_prime, q_in


def stroke_b(rho_prime: DensityOperator, delta1: float, delta2: float) -> float:
    """
    Gap change Delta1 -> Delta2 with the state held fixed

    return:
       w_out: work performed by the system
    """
    check_gaps(delta1, delta2)
    return 0.5 * bloch_from_density(rho_prime).z * (delta1 - delta2)


def stroke_c(rho_prime: DensityOperator, delta2: float, spec: ReservoirSpec):
    """
    Cold collision at fixed Hamiltonian H2

    return:
       (rho_double_prime, q_out)
    """
    rho_double_prime = cold_collision(rho_prime, spec)
    q_out = 0.5 * delta2 * (
        bloch_from_density(rho_double_prime).z - bloch_from_density(rho_prime).z
    )
    return rho_double_prime, q_out


def stroke_d(rho_double_prime: DensityOperator, delta1: float, delta2: float) -> float:
    """
    Gap change Delta2 -> Delta1 with the state held fixed

    return:
       w_in: work performed by the system
    """
    check_gaps(delta1, delta2)
    return 0.5 * bloch_from_density(rho_double_prime).z * (delta2 - delta1)


def cycle_efficiency(record: CycleRecord) -> float:
    """
    W / Q_in of a single cycle, eta = (z' - z'')/(z' - z) (1 - Delta2/Delta1),
    NaN when |Q_in| < HEAT_FLOOR
    """
    if abs(record.q_in) < HEAT_FLOOR:
        return float("nan")
    return record.work / record.q_in


@dataclass(frozen=True, eq=False)
class CycleRecords:
    """
    Column arrays of the retained cycles of a run, chains concatenated
    in chain order
    """

    delta1: float
    delta2: float
    chain: np.ndarray
    cycle: np.ndarray
    z: np.ndarray
    z_prime: np.ndarray
    z_double_prime: np.ndarray

    def __len__(self):
        return self.z.size

    def __getitem__(self, index) -> CycleRecord:
        return CycleRecord.from_bloch(
            self.z[index], self.z_prime[index], self.z_double_prime[index], self.delta1, self.delta2
        )

    def __iter__(self):
        return (self[index] for index in range(len(self)))

    @property
    def q_in(self) -> np.ndarray:
        """Heat absorbed from the hot reservoir"""
        return 0.5 * self.delta1 * (self.z_prime - self.z)

    @property
    def w_out(self) -> np.ndarray:
        """Work performed during the expansion"""
        return 0.5 * self.z_prime * (self.delta1 - self.delta2)

    @property
    def q_out(self) -> np.ndarray:
        """Heat absorbed from the cold reservoir"""
        return 0.5 * self.delta2 * (self.z_double_prime - self.z_prime)

    @property
    def w_in(self) -> np.ndarray:
        """Work performed during the compression"""
        return 0.5 * self.z_double_prime * (self.delta2 - self.delta1)

    @property
    def work(self) -> np.ndarray:
        """W = W_in + W_out"""
        return self.w_in + self.w_out

    @property
    def efficiency_flagged(self) -> np.ndarray:
        """Cycles whose input heat is too small to define an efficiency"""
        return np.abs(self.q_in) < HEAT_FLOOR

    @property
    def efficiency(self) -> np.ndarray:
        """Per-cycle efficiency, NaN on flagged cycles"""
        q_in = self.q_in
        flagged = self.efficiency_flagged
        return np.where(flagged, np.nan, self.work / np.where(flagged, 1.0, q_in))


def macroscopic_efficiency(records) -> float:
    """
    Sum of work over sum of input heat

    return:
       efficiency: <W> / <Q_in>
    """
    if isinstance(records, CycleRecords):
        work, q_in = records.work, records.q_in
    else:
        records = list(records)
        work = np.array([record.work for record in records])
        q_in = np.array([record.q_in for record in records])
    if q_in.size == 0:
        raise InsufficientDataError("no cycle records")
    total_heat = float(np.sum(q_in))
    if total_heat == 0.0:
        raise InsufficientDataError("total input heat is zero, the macroscopic efficiency is undefined")
    return float(np.sum(work)) / total_heat


def run_chain(params: OttoParams, chain_index: int) -> np.ndarray:
    """
    Run one chain of n_discard + n_cycles cycles

    return:
       z: array of shape (n_cycles, 3) holding z, z', z'' of the kept cycles
    """
    spec = params.reservoir_spec()
    sampler = HaarSampler(spec.joint_dimension, child_seed_sequence(params.master_seed, chain_index))
    cold = cold_transfer_matrix(spec)
    total = params.n_discard + params.n_cycles
    step = chunk_size(spec.joint_dimension)
    state = bloch_coordinates(params.initial_state.matrix)
    history = np.empty((total, 3))
    for start in range(0, total, step):
        hot = hot_transfer_matrices(sampler.sample_batch(min(step, total - start)), spec)
        for offset, transfer in enumerate(hot):
            cycle = start + offset
            history[cycle, 0] = state[3]
            state = transfer @ state
            history[cycle, 1] = state[3]
            state = cold @ state
            history[cycle, 2] = state[3]
    return history[params.n_discard:]


def run_otto(params: OttoParams, workers: int = 1) -> CycleRecords:
    """
    Run every chain and collect the kept cycles
    """
    logger.info(
        "otto run: delta1=%g delta2=%g mu=%d alpha=%.6g, %d chains x %d cycles (+%d discarded)",
        params.delta1,
        params.delta2,
        params.hot_dimension,
        params.swap_angle,
        params.n_chains,
        params.n_cycles,
        params.n_discard,
    )
    histories = run_tasks(partial(run_chain, params), range(params.n_chains), workers)
    history = np.concatenate(histories, axis=0)
    chains = np.repeat(np.arange(params.n_chains), params.n_cycles)
    cycles = np.tile(np.arange(params.n_discard, params.n_discard + params.n_cycles), params.n_chains)
    return CycleRecords(
        params.delta1,
        params.delta2,
        chains,
        cycles,
        history[:, 0].copy(),
        history[:, 1].copy(),
        history[:, 2].copy(),
    )


@dataclass(frozen=True)
class OttoSummary:
    """
    Aggregate statistics of a run
    """

    cycles: int
    flagged_efficiencies: int
    macroscopic_efficiency: float
    analytic_efficiency: float
    mean_work: float
    mean_q_in: float
    mean_q_out: float
    work_fit: object
    heat_fit: object
    work_heat_correlation: float
    mean_z: float
    mean_z_double_prime: float
    stationarity_gap: float
    stationarity_stderr: float

    @property
    def ratio_params(self) -> RatioPdfParams:
        """Inputs of the Gaussian ratio density"""
        return RatioPdfParams.from_fits(self.work_fit, self.heat_fit)

    @property
    def stationary(self) -> bool:
        """|<z''> - <z>| within three combined standard errors"""
        return self.stationarity_gap <= 3.0 * self.stationarity_stderr


def summarize_otto(records: CycleRecords, params: OttoParams) -> OttoSummary:
    """
    Macroscopic efficiency, Gaussian fits of W and Q_in and the
    stationarity check of a run
    """
    flagged = int(np.count_nonzero(records.efficiency_flagged))
    if flagged:
        logger.warning("%d cycles with |Q_in| < %g have no efficiency", flagged, HEAT_FLOOR)
    work, q_in = records.work, records.q_in
    z_fit = fit_gaussian(records.z)
    z_double_prime_fit = fit_gaussian(records.z_double_prime)
    correlation = float(np.corrcoef(work, q_in)[0, 1]) if np.std(work) > 0 and np.std(q_in) > 0 else 0.0
    return OttoSummary(
        cycles=len(records),
        flagged_efficiencies=flagged,
        macroscopic_efficiency=macroscopic_efficiency(records),
        analytic_efficiency=params.analytic_efficiency,
        mean_work=float(np.mean(work)),
        mean_q_in=float(np.mean(q_in)),
        mean_q_out=float(np.mean(records.q_out)),
        work_fit=fit_gaussian(work),
        heat_fit=fit_gaussian(q_in),
        work_heat_correlation=correlation,
        mean_z=z_fit.mean,
        mean_z_double_prime=z_double_prime_fit.mean,
        stationarity_gap=abs(z_double_prime_fit.mean - z_fit.mean),
        stationarity_stderr=float(np.hypot(z_fit.stderr, z_double_prime_fit.stderr)),
    )
