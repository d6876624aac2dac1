#
# SPDX-FileCopyrightText: 2024 collisionengine developers
#
# SPDX-License-Identifier: GPL-3.0-or-later
#

"""Battery, Otto and ratio-pdf experiments and their artifacts

Each experiment function takes a validated ExperimentConfig, runs the
simulation, writes its artifacts into the output directory and returns
the written paths, manifest last.
"""

from dataclasses import asdict
import itertools
import logging
import os
import numpy as np
from collisionengine.artifacts import (
    artifact_name,
    ensure_directory,
    histogram_rows,
    write_columns,
    write_csv,
    write_histogram,
    write_json,
    write_manifest,
)
from collisionengine.engine.battery import COLD, HOT, BatteryRunConfig, run_battery
from collisionengine.engine.otto import OttoParams, run_otto, summarize_otto
from collisionengine.exceptions import (
    InsufficientDataError,
    InvalidHistogramError,
    ParameterRangeError,
)
from collisionengine.sampler.streams import make_generator
from collisionengine.statistics.fitting import (
    default_tail_range,
    ks_distance,
    normal_ks_distance,
    tail_exponent_fit,
)
from collisionengine.statistics.histogram import (
    log_edges,
    make_histogram,
    symmetric_log_edges,
)
from collisionengine.statistics.ratio_distribution import (
    RatioPdfParams,
    ratio_cdf,
    ratio_normalization,
    ratio_pdf,
    sample_ratio,
)

logger = logging.getLogger(__name__)


def _path(config, suffix, tag=""):
    return os.path.join(
        config.output.directory,
        artifact_name(config.experiment, config.master_seed, suffix, tag),
    )


def battery_point_summary(result) -> dict:
    """
    Mean ergotropy after the last hot and the last cold collision and the
    distance from a period-2 pattern over the last two periods
    """
    means = result.mean_ergotropy()
    labels = result.config.reservoir_labels()
    last_hot = max(index for index, label in enumerate(labels) if label == HOT)
    cold = [index for index, label in enumerate(labels) if label == COLD]
    ergotropy = result.ergotropy()
    summary = {
        "mu": result.config.hot_dimension,
        "alpha": result.config.swap_angle,
        "final_mean_ergotropy": means[-1],
        "final_ergotropy_stderr": result.ergotropy_stderr()[-1],
        "steady_hot_ergotropy": means[last_hot],
        "steady_cold_ergotropy": means[cold[-1]] if cold else None,
        "max_cold_ergotropy": float(ergotropy[:, cold].max()) if cold else None,
        "period_two_gap": abs(means[-1] - means[-3]) if means.size >= 3 else None,
    }
    return summary


def run_battery_experiment(config) -> list:
    """
    One battery run per (mu, alpha) pair, one artifact set per run
    """
    ensure_directory(config.output.directory)
    physics, run = config.physics, config.run
    artifacts, points = [], []
    for mu, alpha in itertools.product(physics.mu, physics.alpha):
        result = run_battery(
            BatteryRunConfig(mu, alpha, physics.delta, run.collisions, run.trajectories, config.master_seed),
            workers=run.threads,
        )
        tag = f"mu{mu}_alpha{alpha:.6f}"
        labels = result.config.reservoir_labels()
        n_trajectories, n_collisions = run.trajectories, run.collisions
        ergotropy, energy = result.ergotropy(), result.energy()
        coherence, purity = result.coherence(), result.purity()
        bloch = result.bloch
        artifacts.append(
            write_columns(
                _path(config, "records.csv", tag),
                {
                    "trajectory": np.repeat(np.arange(n_trajectories), n_collisions),
                    "collision": np.tile(np.arange(1, n_collisions + 1), n_trajectories),
                    "reservoir": np.tile(labels, n_trajectories),
                    "x": bloch[..., 0].ravel(),
                    "y": bloch[..., 1].ravel(),
                    "z": bloch[..., 2].ravel(),
                    "ergotropy": ergotropy.ravel(),
                    "energy": energy.ravel(),
                    "coherence": coherence.ravel(),
                    "purity": purity.ravel(),
                },
            )
        )
        artifacts.append(
            write_columns(
                _path(config, "means.csv", tag),
                {
                    "collision": np.arange(1, n_collisions + 1),
                    "reservoir": labels,
                    "mean_ergotropy": result.mean_ergotropy(),
                    "ergotropy_stderr": result.ergotropy_stderr(),
                    "mean_energy": energy.mean(axis=0),
                    "mean_coherence": coherence.mean(axis=0),
                    "mean_purity": purity.mean(axis=0),
                },
            )
        )
        edges = np.linspace(0.0, physics.delta, config.histogram.ergotropy_bins + 1)
        rows = itertools.chain.from_iterable(
            histogram_rows(make_histogram(ergotropy[:, collision], edges), collision + 1)
            for collision in range(n_collisions)
        )
        artifacts.append(
            write_csv(
                _path(config, "ergotropy_histograms.csv", tag),
                ["collision", "left", "right", "count", "density"],
                rows,
            )
        )
        points.append(battery_point_summary(result))
    artifacts.append(write_json(_path(config, "summary.json"), {"points": points}))
    artifacts.append(write_manifest(_path(config, "manifest.json"), config, artifacts))
    return artifacts


def _fit_dict(fit) -> dict:
    return dict(asdict(fit), stderr=fit.stderr)


def efficiency_edges(efficiency, bins_per_side: int) -> np.ndarray:
    """
    Symmetric log bins covering every finite efficiency, the central
    bin reaching a hundredth of the median magnitude
    """
    magnitudes = np.abs(efficiency)
    positive = magnitudes[np.isfinite(magnitudes) & (magnitudes > 0)]
    if positive.size == 0:
        raise InvalidHistogramError("no nonzero efficiencies to bin")
    low = float(np.median(positive)) / 100.0
    high = max(float(positive.max()) * (1.0 + 1e-12), 10.0 * low)
    return symmetric_log_edges(low, high, bins_per_side)


def efficiency_histogram(finite, binning):
    """
    Log-binned histogram of the finite efficiencies, linear bins when
    every efficiency vanishes
    """
    try:
        return make_histogram(finite, efficiency_edges(finite, binning.eta_bins_per_side))
    except InvalidHistogramError as exception:
        logger.warning("%s, using linear bins", exception)
        return make_histogram(finite if finite.size else np.zeros(1), binning.bins)


def tail_summary(tail, efficiency, tail_bins: int) -> dict:
    """
    Power-law fit of one efficiency tail (positive values of tail), or
    the reason no fit was possible
    """
    try:
        low, high = default_tail_range(efficiency)
        if not 0 < low < high:
            raise InsufficientDataError(f"degenerate tail range ({low}, {high})")
        histogram = make_histogram(tail[tail > 0], log_edges(low, high, tail_bins))
        fit = tail_exponent_fit(histogram, (low, high))
    except InsufficientDataError as exception:
        logger.warning("no tail fit: %s", exception)
        return {"tail_exponent": None, "error": str(exception)}
    return {
        "tail_exponent": fit.exponent,
        "stderr": fit.stderr,
        "intercept": fit.intercept,
        "bins_used": fit.bins_used,
        "fit_range": fit.fit_range,
    }


def run_otto_experiment(config) -> list:
    """
    Otto chains, records, histograms, fits and analytic-curve tables
    """
    ensure_directory(config.output.directory)
    physics, run, binning = config.physics, config.run, config.histogram
    params = OttoParams(
        physics.delta1,
        physics.delta2,
        physics.mu[0],
        physics.alpha[0],
        run.cycles,
        config.master_seed,
        n_discard=run.discard,
        n_chains=run.chains,
    )
    records = run_otto(params, workers=run.threads)
    summary = summarize_otto(records, params)
    work, q_in, efficiency = records.work, records.q_in, records.efficiency
    flagged = records.efficiency_flagged
    finite = efficiency[~flagged]
    artifacts = [
        write_columns(
            _path(config, "records.csv"),
            {
                "chain": records.chain,
                "cycle": records.cycle,
                "z": records.z,
                "z_prime": records.z_prime,
                "z_double_prime": records.z_double_prime,
                "q_in": q_in,
                "w_out": records.w_out,
                "q_out": records.q_out,
                "w_in": records.w_in,
                "work": work,
                "efficiency": efficiency,
                "efficiency_flagged": flagged,
            },
        ),
        write_histogram(_path(config, "work_histogram.csv"), make_histogram(work, binning.bins)),
        write_histogram(_path(config, "heat_histogram.csv"), make_histogram(q_in, binning.bins)),
        write_histogram(_path(config, "efficiency_histogram.csv"), efficiency_histogram(finite, binning)),
    ]

    try:
        ratio_params = summary.ratio_params
    except ParameterRangeError as exception:
        # alpha = 0 gives W = 0 on every cycle
        logger.warning("no ratio density for this run: %s", exception)
        ratio_params = None
    for name, fit in (("work", summary.work_fit), ("heat", summary.heat_fit)):
        if fit.degenerate:
            logger.warning("no Gaussian curve for constant %s", name)
            continue
        grid = np.linspace(fit.mean - 5.0 * fit.std, fit.mean + 5.0 * fit.std, binning.curve_points)
        artifacts.append(
            write_columns(_path(config, f"{name}_curve.csv"), {name: grid, "gaussian_pdf": fit.pdf(grid)})
        )
    if ratio_params is not None:
        span = float(np.quantile(np.abs(finite), 0.99)) if finite.size else 1.0
        span = span if span > 0 else 1.0
        grid = np.linspace(-span, span, binning.curve_points)
        artifacts.append(
            write_columns(
                _path(config, "efficiency_curve.csv"),
                {
                    "efficiency": grid,
                    "ratio_pdf": ratio_pdf(grid, ratio_params),
                    "ratio_cdf": ratio_cdf(grid, ratio_params),
                },
            )
        )
    ratio_ks = None
    if ratio_params is not None and finite.size:
        ratio_ks = ks_distance(finite, lambda eta: ratio_cdf(eta, ratio_params))

    document = {
        "cycles": summary.cycles,
        "flagged_efficiencies": summary.flagged_efficiencies,
        "macroscopic_efficiency": summary.macroscopic_efficiency,
        "analytic_efficiency": summary.analytic_efficiency,
        "mean_work": summary.mean_work,
        "mean_q_in": summary.mean_q_in,
        "mean_q_out": summary.mean_q_out,
        "work_fit": _fit_dict(summary.work_fit),
        "heat_fit": _fit_dict(summary.heat_fit),
        "work_heat_correlation": summary.work_heat_correlation,
        "work_normal_ks": normal_ks_distance(work),
        "heat_normal_ks": normal_ks_distance(q_in),
        "ratio_params": asdict(ratio_params) if ratio_params is not None else None,
        "efficiency_ratio_ks": ratio_ks,
        "positive_tail": tail_summary(finite, finite, binning.tail_bins),
        "negative_tail": tail_summary(-finite, finite, binning.tail_bins),
        "mean_z": summary.mean_z,
        "mean_z_double_prime": summary.mean_z_double_prime,
        "stationarity_gap": summary.stationarity_gap,
        "stationarity_stderr": summary.stationarity_stderr,
        "stationary": summary.stationary,
    }
    artifacts.append(write_json(_path(config, "summary.json"), document))
    artifacts.append(write_manifest(_path(config, "manifest.json"), config, artifacts))
    return artifacts


def run_ratio_experiment(config) -> list:
    """
    Table of the Gaussian ratio density and distribution function on a
    grid, with an optional Monte Carlo check
    """
    ensure_directory(config.output.directory)
    ratio = config.ratio
    params = RatioPdfParams(ratio.mean_work, ratio.std_work, ratio.mean_heat, ratio.std_heat)
    grid = np.linspace(ratio.eta_min, ratio.eta_max, ratio.points)
    artifacts = [
        write_columns(
            _path(config, "table.csv"),
            {"eta": grid, "pdf": ratio_pdf(grid, params, ratio.bracket), "cdf": ratio_cdf(grid, params)},
        )
    ]
    document = {
        "params": asdict(params),
        "bracket": ratio.bracket,
        "normalization": ratio_normalization(params, bracket=ratio.bracket),
        "pdf_at_zero": ratio_pdf(0.0, params, ratio.bracket),
    }
    if ratio.mc_samples:
        samples = sample_ratio(params, ratio.mc_samples, make_generator(config.master_seed))
        document["mc_samples"] = int(samples.size)
        document["mc_ks"] = ks_distance(samples, lambda eta: ratio_cdf(eta, params))
    artifacts.append(write_json(_path(config, "summary.json"), document))
    artifacts.append(write_manifest(_path(config, "manifest.json"), config, artifacts))
    return artifacts


EXPERIMENT_RUNNERS = {
    "battery": run_battery_experiment,
    "otto": run_otto_experiment,
    "ratio-pdf": run_ratio_experiment,
}
