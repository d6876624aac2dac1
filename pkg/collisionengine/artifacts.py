#
# SPDX-FileCopyrightText: 2024 collisionengine developers
#
# SPDX-License-Identifier: GPL-3.0-or-later
#

"""Writers for the CSV tables, JSON summaries and run manifests

Floats are written with repr so that a file can be read back to the
same bits. NaN and infinities are written as nan, inf and -inf in CSV
and as null in JSON.
"""

import csv
from datetime import datetime, timezone
import json
import logging
import math
import os
import numpy as np
from collisionengine.version import __version__

logger = logging.getLogger(__name__)


def format_value(value) -> str:
    """
    Text of one CSV cell
    """
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def json_ready(value):
    """
    Convert numpy scalars, arrays, tuples and dataclass-like dictionaries
    into plain JSON values
    """
    if isinstance(value, dict):
        return {str(key): json_ready(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [json_ready(item) for item in value]
    if isinstance(value, np.ndarray):
        return [json_ready(item) for item in value.tolist()]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    return value


def artifact_name(experiment: str, master_seed, suffix: str, tag: str = "") -> str:
    """
    File name derived from the experiment kind, the seed and a tag
    """
    parts = [experiment]
    if master_seed is not None:
        parts.append(f"seed{master_seed}")
    if tag:
        parts.append(tag)
    return "_".join(parts) + "_" + suffix


def write_csv(path: str, header, rows) -> str:
    """
    Write a header and rows of values to path

    return:
       path: the written file
    """
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_value(value) for value in row])
    logger.info("wrote %s", path)
    return path


def write_columns(path: str, columns: dict) -> str:
    """
    Write equal-length columns, keyed by header name
    """
    header = list(columns)
    arrays = [np.asarray(columns[name]) for name in header]
    return write_csv(path, header, zip(*arrays))


def write_json(path: str, document) -> str:
    """
    Write a JSON document with sorted keys
    """
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(json_ready(document), handle, indent=2, sort_keys=True, allow_nan=False)
        handle.write("\n")
    logger.info("wrote %s", path)
    return path


def histogram_rows(histogram, label=None):
    """
    Rows (label, left, right, count, density) of a histogram, followed
    by the underflow and overflow counts
    """
    density = histogram.density()
    prefix = [] if label is None else [label]
    for left, right, count, value in zip(histogram.edges[:-1], histogram.edges[1:], histogram.counts, density):
        yield prefix + [left, right, count, value]
    yield prefix + [-math.inf, histogram.edges[0], histogram.underflow, math.nan]
    yield prefix + [histogram.edges[-1], math.inf, histogram.overflow, math.nan]


def write_histogram(path: str, histogram) -> str:
    """
    Write one histogram as a CSV table
    """
    return write_csv(path, ["left", "right", "count", "density"], histogram_rows(histogram))


def ensure_directory(directory: str) -> str:
    """Create the output directory if needed"""
    os.makedirs(directory, exist_ok=True)
    return directory


def write_manifest(path: str, config, artifacts) -> str:
    """
    Record the version, every configuration knob, the seed, a timestamp
    and the produced files
    """
    return write_json(
        path,
        {
            "version": __version__,
            "experiment": config.experiment,
            "master_seed": config.master_seed,
            "config": config.as_dict(),
            "created": datetime.now(timezone.utc).isoformat(),
            "artifacts": sorted(os.path.basename(artifact) for artifact in artifacts),
        },
    )
