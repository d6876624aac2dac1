#
# SPDX-FileCopyrightText: 2024 collisionengine developers
#
# SPDX-License-Identifier: GPL-3.0-or-later
#

"""Experiment configuration

A configuration is one JSON object with the sections physics, run,
histogram, ratio and output plus the top-level keys experiment and
master_seed. Command-line overrides are dotted paths ("physics.mu") and
win over the file. Validation reports every violated constraint at once.
"""

from dataclasses import asdict, dataclass
import json
import math
import re
from collisionengine.exceptions import ConfigurationError
from collisionengine.sampler.streams import MAX_SEED

EXPERIMENTS = ("battery", "otto", "ratio-pdf")
MAX_HOT_DIMENSION = 64
_PI_FRACTION = re.compile(
    r"^\s*(?:(?P<factor>\d+(?:\.\d*)?)\s*\*\s*)?pi(?:\s*/\s*(?P<divisor>\d+(?:\.\d*)?))?\s*$"
)


@dataclass(frozen=True)
class PhysicsConfig:
    """
    Qudit dimensions, swap angles and qubit gaps. mu and alpha are
    tuples; only the battery experiment sweeps over several values.
    """

    mu: tuple = (2,)
    alpha: tuple = (math.pi / 10,)
    delta: float = 1.0
    delta1: float = 2.0
    delta2: float = 1.0


@dataclass(frozen=True)
class RunConfig:
    """
    Ensemble sizes and execution
    """

    trajectories: int = 10000
    collisions: int = 12
    cycles: int = 100000
    discard: int = 10
    chains: int = 1
    threads: int = 1


@dataclass(frozen=True)
class HistogramConfig:
    """
    Binning of the emitted histograms and analytic curves
    """

    bins: object = "fd"
    ergotropy_bins: int = 50
    eta_bins_per_side: int = 60
    tail_bins: int = 20
    curve_points: int = 401


@dataclass(frozen=True)
class RatioConfig:
    """
    Parameters of the ratio-pdf table
    """

    mean_work: float = 0.0
    std_work: float = 1.0
    mean_heat: float = 0.0
    std_heat: float = 1.0
    eta_min: float = -10.0
    eta_max: float = 10.0
    points: int = 201
    bracket: str = "hinkley"
    mc_samples: int = 0


@dataclass(frozen=True)
class OutputConfig:
    """
    Where artifacts are written
    """

    directory: str = "results"


@dataclass(frozen=True)
class ExperimentConfig:
    """
    Complete, validated description of one experiment
    """

    experiment: str
    master_seed: object
    physics: PhysicsConfig
    run: RunConfig
    histogram: HistogramConfig
    ratio: RatioConfig
    output: OutputConfig

    def as_dict(self) -> dict:
        """Plain dictionary of every knob, for manifests"""
        return asdict(self)


SECTIONS = {
    "physics": PhysicsConfig,
    "run": RunConfig,
    "histogram": HistogramConfig,
    "ratio": RatioConfig,
    "output": OutputConfig,
}


def parse_angle(value) -> float:
    """
    Angle given as a number or as a fraction of pi: "pi", "pi/10", "2*pi/5"
    """
    if isinstance(value, bool):
        raise ValueError(f"not an angle: {value!r}")
    if isinstance(value, (int, float)):
        return float(value)
    match = _PI_FRACTION.match(str(value))
    if match is None:
        raise ValueError(f"not an angle: {value!r}")
    factor = float(match.group("factor") or 1.0)
    divisor = float(match.group("divisor") or 1.0)
    if divisor == 0:
        raise ValueError(f"not an angle: {value!r}")
    return factor * math.pi / divisor


class _Collector:
    """
    Accumulates (field path, message) problems
    """

    def __init__(self):
        self.problems = []

    def add(self, path, message):
        self.problems.append((path, message))

    def integer(self, path, value, minimum=None, maximum=None):
        if isinstance(value, bool) or not isinstance(value, int):
            self.add(path, f"expected an integer, got {value!r}")
            return None
        if minimum is not None and value < minimum:
            self.add(path, f"must be >= {minimum}, got {value}")
        if maximum is not None and value > maximum:
            self.add(path, f"must be <= {maximum}, got {value}")
        return value

    def number(self, path, value, positive=False):
        if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
            self.add(path, f"expected a finite number, got {value!r}")
            return None
        if positive and not value > 0:
            self.add(path, f"must be positive, got {value}")
        return float(value)


def _as_tuple(value):
    return tuple(value) if isinstance(value, (list, tuple)) else (value,)


def _merge(document: dict, overrides: dict) -> dict:
    merged = {key: dict(value) if isinstance(value, dict) else value for key, value in document.items()}
    for path, value in (overrides or {}).items():
        if value is None:
            continue
        keys = path.split(".")
        target = merged
        for key in keys[:-1]:
            if not isinstance(target.get(key), dict):
                target[key] = {}
            target = target[key]
        target[keys[-1]] = value
    return merged


def _validate_physics(raw, experiment, check):
    mus = []
    for index, mu in enumerate(_as_tuple(raw.get("mu", PhysicsConfig.mu))):
        value = check.integer(f"physics.mu[{index}]", mu, 2, MAX_HOT_DIMENSION)
        if value is not None:
            mus.append(value)
    alphas = []
    for index, alpha in enumerate(_as_tuple(raw.get("alpha", PhysicsConfig.alpha))):
        path = f"physics.alpha[{index}]"
        try:
            angle = parse_angle(alpha)
        except ValueError as exception:
            check.add(path, str(exception))
            continue
        if not 0.0 <= angle <= math.pi / 2 + 1e-15:
            check.add(path, f"swap angle {angle!r} violates 0 <= alpha <= pi/2")
            continue
        alphas.append(min(angle, math.pi / 2))
    if experiment != "battery":
        if len(mus) > 1:
            check.add("physics.mu", "only the battery experiment accepts several values")
        if len(alphas) > 1:
            check.add("physics.alpha", "only the battery experiment accepts several values")
    delta = check.number("physics.delta", raw.get("delta", PhysicsConfig.delta), positive=True)
    delta1 = check.number("physics.delta1", raw.get("delta1", PhysicsConfig.delta1), positive=True)
    delta2 = check.number("physics.delta2", raw.get("delta2", PhysicsConfig.delta2), positive=True)
    if delta1 is not None and delta2 is not None and not delta1 > delta2:
        check.add("physics.delta2", f"gaps must satisfy delta1 > delta2 > 0, got {delta1} and {delta2}")
    return PhysicsConfig(tuple(mus), tuple(alphas), delta, delta1, delta2)


def _validate_run(raw, check):
    defaults = RunConfig()
    return RunConfig(
        trajectories=check.integer("run.trajectories", raw.get("trajectories", defaults.trajectories), 1),
        collisions=check.integer("run.collisions", raw.get("collisions", defaults.collisions), 1),
        cycles=check.integer("run.cycles", raw.get("cycles", defaults.cycles), 2),
        discard=check.integer("run.discard", raw.get("discard", defaults.discard), 0),
        chains=check.integer("run.chains", raw.get("chains", defaults.chains), 1),
        threads=check.integer("run.threads", raw.get("threads", defaults.threads), 1),
    )


def _validate_histogram(raw, check):
    defaults = HistogramConfig()
    bins = raw.get("bins", defaults.bins)
    if bins != "fd":
        bins = check.integer("histogram.bins", bins, 1)
    return HistogramConfig(
        bins=bins,
        ergotropy_bins=check.integer("histogram.ergotropy_bins", raw.get("ergotropy_bins", defaults.ergotropy_bins), 1),
        eta_bins_per_side=check.integer(
            "histogram.eta_bins_per_side", raw.get("eta_bins_per_side", defaults.eta_bins_per_side), 1
        ),
        tail_bins=check.integer("histogram.tail_bins", raw.get("tail_bins", defaults.tail_bins), 5),
        curve_points=check.integer("histogram.curve_points", raw.get("curve_points", defaults.curve_points), 2),
    )


def _validate_ratio(raw, check):
    defaults = RatioConfig()
    bracket = raw.get("bracket", defaults.bracket)
    if bracket not in ("hinkley", "shifted"):
        check.add("ratio.bracket", f"expected 'hinkley' or 'shifted', got {bracket!r}")
    ratio = RatioConfig(
        mean_work=check.number("ratio.mean_work", raw.get("mean_work", defaults.mean_work)),
        std_work=check.number("ratio.std_work", raw.get("std_work", defaults.std_work), positive=True),
        mean_heat=check.number("ratio.mean_heat", raw.get("mean_heat", defaults.mean_heat)),
        std_heat=check.number("ratio.std_heat", raw.get("std_heat", defaults.std_heat), positive=True),
        eta_min=check.number("ratio.eta_min", raw.get("eta_min", defaults.eta_min)),
        eta_max=check.number("ratio.eta_max", raw.get("eta_max", defaults.eta_max)),
        points=check.integer("ratio.points", raw.get("points", defaults.points), 2),
        bracket=bracket,
        mc_samples=check.integer("ratio.mc_samples", raw.get("mc_samples", defaults.mc_samples), 0),
    )
    if ratio.eta_min is not None and ratio.eta_max is not None and not ratio.eta_min < ratio.eta_max:
        check.add("ratio.eta_max", "eta_max must exceed eta_min")
    return ratio


def validate_config(raw_text: str, overrides: dict = None) -> ExperimentConfig:
    """
    Parse and validate a JSON configuration, applying overrides first

    return:
       config: ExperimentConfig; a ConfigurationError listing every
       problem is raised otherwise
    """
    check = _Collector()
    try:
        document = json.loads(raw_text) if raw_text and raw_text.strip() else {}
    except json.JSONDecodeError as exception:
        raise ConfigurationError([("<file>", f"not valid JSON: {exception}")]) from exception
    if not isinstance(document, dict):
        raise ConfigurationError([("<file>", "top level must be a JSON object")])
    document = _merge(document, overrides)

    for key in document:
        if key not in SECTIONS and key not in ("experiment", "master_seed"):
            check.add(key, "unknown key")
    for name, section in SECTIONS.items():
        value = document.setdefault(name, {})
        if not isinstance(value, dict):
            check.add(name, "must be a JSON object")
            document[name] = {}
            continue
        known = section.__dataclass_fields__
        for key in value:
            if key not in known:
                check.add(f"{name}.{key}", "unknown key")

    experiment = document.get("experiment")
    if experiment not in EXPERIMENTS:
        check.add("experiment", f"expected one of {EXPERIMENTS}, got {experiment!r}")

    master_seed = document.get("master_seed")
    needs_seed = experiment in ("battery", "otto") or (
        experiment == "ratio-pdf" and document["ratio"].get("mc_samples", 0)
    )
    if master_seed is None:
        if needs_seed:
            check.add("master_seed", "missing; runs draw no implicit entropy")
    else:
        check.integer("master_seed", master_seed, 0, MAX_SEED)

    physics = _validate_physics(document["physics"], experiment, check)
    run = _validate_run(document["run"], check)
    histogram = _validate_histogram(document["histogram"], check)
    ratio = _validate_ratio(document["ratio"], check)
    directory = document["output"].get("directory", OutputConfig.directory)
    if not isinstance(directory, str) or not directory:
        check.add("output.directory", f"expected a path, got {directory!r}")

    if check.problems:
        raise ConfigurationError(check.problems)
    return ExperimentConfig(
        experiment, master_seed, physics, run, histogram, ratio, OutputConfig(directory)
    )
