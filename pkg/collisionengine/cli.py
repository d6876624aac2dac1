#
# SPDX-FileCopyrightText: 2024 collisionengine developers
#
# SPDX-License-Identifier: GPL-3.0-or-later
#

"""Command line: collisionengine {battery,otto,ratio-pdf} [options]

Exit codes: 0 success, 2 configuration error, 3 runtime or numerical
error, 4 input/output error.
"""

import argparse
import logging
import sys
import numpy as np
from collisionengine.config import validate_config
from collisionengine.exceptions import (
    ConfigurationError,
    DimensionMismatchError,
    InsufficientDataError,
    InvalidHistogramError,
    InvalidStateError,
    ParameterRangeError,
)
from collisionengine.experiments import EXPERIMENT_RUNNERS
from collisionengine.version import __version__

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_RUNTIME = 3
EXIT_IO = 4

RUNTIME_ERRORS = (
    DimensionMismatchError,
    InsufficientDataError,
    InvalidHistogramError,
    InvalidStateError,
    ParameterRangeError,
    FloatingPointError,
    ValueError,
    np.linalg.LinAlgError,
)

# option destination -> dotted configuration path
OVERRIDES = {
    "seed": "master_seed",
    "out": "output.directory",
    "threads": "run.threads",
    "mu": "physics.mu",
    "alpha": "physics.alpha",
    "delta": "physics.delta",
    "delta1": "physics.delta1",
    "delta2": "physics.delta2",
    "trajectories": "run.trajectories",
    "collisions": "run.collisions",
    "cycles": "run.cycles",
    "discard": "run.discard",
    "chains": "run.chains",
    "mean_work": "ratio.mean_work",
    "std_work": "ratio.std_work",
    "mean_heat": "ratio.mean_heat",
    "std_heat": "ratio.std_heat",
    "eta_min": "ratio.eta_min",
    "eta_max": "ratio.eta_max",
    "points": "ratio.points",
    "bracket": "ratio.bracket",
    "mc_samples": "ratio.mc_samples",
}


def _alpha(text):
    try:
        return float(text)
    except ValueError:
        return text


def build_parser() -> argparse.ArgumentParser:
    """
    Argument parser with one subcommand per experiment
    """
    parser = argparse.ArgumentParser(
        prog="collisionengine",
        description="Quantum battery and Otto engine driven by Haar-random collisions",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON configuration file")
    common.add_argument("--seed", type=int, help="master seed, 0 <= seed < 2**64")
    common.add_argument("--out", help="output directory")
    common.add_argument("--threads", type=int, help="worker processes")
    common.add_argument("--verbose", action="store_true", help="log progress")
    subparsers = parser.add_subparsers(dest="experiment", required=True)

    battery = subparsers.add_parser("battery", parents=[common], help="charge and discharge a qubit battery")
    battery.add_argument("--mu", type=int, nargs="+", help="hot qudit dimensions")
    battery.add_argument("--alpha", type=_alpha, nargs="+", help="swap angles, e.g. pi/10")
    battery.add_argument("--delta", type=float, help="qubit gap")
    battery.add_argument("--trajectories", type=int)
    battery.add_argument("--collisions", type=int)

    otto = subparsers.add_parser("otto", parents=[common], help="run the four-stroke Otto engine")
    otto.add_argument("--mu", type=int, help="hot qudit dimension")
    otto.add_argument("--alpha", type=_alpha, help="swap angle, e.g. pi/10")
    otto.add_argument("--delta1", type=float, help="gap during the hot stroke")
    otto.add_argument("--delta2", type=float, help="gap during the cold stroke")
    otto.add_argument("--cycles", type=int, help="kept cycles per chain")
    otto.add_argument("--discard", type=int, help="thermalization cycles per chain")
    otto.add_argument("--chains", type=int)

    ratio = subparsers.add_parser("ratio-pdf", parents=[common], help="tabulate the Gaussian ratio density")
    ratio.add_argument("--mean-work", type=float)
    ratio.add_argument("--std-work", type=float)
    ratio.add_argument("--mean-heat", type=float)
    ratio.add_argument("--std-heat", type=float)
    ratio.add_argument("--eta-min", type=float)
    ratio.add_argument("--eta-max", type=float)
    ratio.add_argument("--points", type=int)
    ratio.add_argument("--bracket", choices=("hinkley", "shifted"))
    ratio.add_argument("--mc-samples", type=int, help="Monte Carlo draws checked against the closed form")
    return parser


def overrides_from(arguments) -> dict:
    """
    Dotted configuration paths of every option given on the command line
    """
    overrides = {"experiment": arguments.experiment}
    for destination, path in OVERRIDES.items():
        value = getattr(arguments, destination, None)
        if value is not None:
            overrides[path] = value
    return overrides


def run(config) -> int:
    """
    Execute a validated experiment

    return:
       status: process exit code
    """
    try:
        artifacts = EXPERIMENT_RUNNERS[config.experiment](config)
    except RUNTIME_ERRORS as exception:
        logger.error("%s", exception)
        return EXIT_RUNTIME
    except OSError as exception:
        logger.error("cannot write artifacts: %s", exception)
        return EXIT_IO
    for artifact in artifacts:
        print(artifact)
    return EXIT_OK


def main(argv=None) -> int:
    """
    Parse arguments, validate the configuration and run
    """
    arguments = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if arguments.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        raw_text = ""
        if arguments.config:
            with open(arguments.config, encoding="utf-8") as handle:
                raw_text = handle.read()
    except OSError as exception:
        logger.error("cannot read configuration: %s", exception)
        return EXIT_IO
    try:
        config = validate_config(raw_text, overrides_from(arguments))
    except ConfigurationError as exception:
        logger.error("%s", exception)
        return EXIT_CONFIG
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
