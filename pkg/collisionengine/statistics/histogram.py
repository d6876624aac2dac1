#
# SPDX-FileCopyrightText: 2024 collisionengine developers
#
# SPDX-License-Identifier: GPL-3.0-or-later
#

"""Histograms of work, heat, ergotropy and efficiency samples

Bins are left-closed and right-open, except the last bin which also
contains its right edge. Samples outside the edges are counted as
underflow or overflow.
"""

from dataclasses import dataclass
import numpy as np
from collisionengine.exceptions import InvalidHistogramError


@dataclass(frozen=True, eq=False)
class Histogram:
    """
    Bin edges, bin counts and the out-of-range counts of a sample
    """

    edges: np.ndarray
    counts: np.ndarray
    underflow: int = 0
    overflow: int = 0

    def __post_init__(self):
        edges = check_edges(self.edges)
        counts = np.asarray(self.counts, dtype=np.int64)
        if counts.shape != (edges.size - 1,):
            raise InvalidHistogramError(
                f"{counts.size} counts do not match {edges.size - 1} bins"
            )
        if np.any(counts < 0) or self.underflow < 0 or self.overflow < 0:
            raise InvalidHistogramError("counts must be nonnegative")
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "counts", counts)

    @property
    def total_count(self) -> int:
        """Number of samples, out-of-range ones included"""
        return int(self.counts.sum()) + self.underflow + self.overflow

    @property
    def widths(self) -> np.ndarray:
        """Bin widths"""
        return np.diff(self.edges)

    @property
    def centers(self) -> np.ndarray:
        """Arithmetic bin centers"""
        return 0.5 * (self.edges[:-1] + self.edges[1:])

    def density(self) -> np.ndarray:
        """
        Probability density estimate, normalized by the total count
        so that out-of-range samples keep their share of probability
        """
        if self.total_count == 0:
            return np.zeros_like(self.widths)
        return self.counts / (self.total_count * self.widths)

    def merge(self, other: "Histogram") -> "Histogram":
        """
        Sum of two histograms with identical edges
        """
        if self.edges.shape != other.edges.shape or np.any(self.edges != other.edges):
            raise InvalidHistogramError("cannot merge histograms with different edges")
        return Histogram(
            self.edges,
            self.counts + other.counts,
            self.underflow + other.underflow,
            self.overflow + other.overflow,
        )


def check_edges(edges) -> np.ndarray:
    """
    Verify that bin edges are finite and strictly ascending
    """
    edges = np.asarray(edges, dtype=float)
    if edges.ndim != 1 or edges.size < 2:
        raise InvalidHistogramError("at least two bin edges are needed")
    if not np.all(np.isfinite(edges)):
        raise InvalidHistogramError("bin edges must be finite")
    if np.any(np.diff(edges) <= 0):
        raise InvalidHistogramError("bin edges must be strictly ascending")
    return edges


def _finite_samples(samples) -> np.ndarray:
    samples = np.asarray(samples, dtype=float).ravel()
    if np.any(np.isnan(samples)):
        raise InvalidHistogramError("samples contain NaN")
    return samples


def bin_edges(samples, bins="fd", value_range=None) -> np.ndarray:
    """
    Resolve a bin specification into edges. bins is either explicit
    edges, a number of equal-width bins over value_range (default the
    sample range), or "fd" for the Freedman-Diaconis rule.
    """
    if isinstance(bins, str) or np.ndim(bins) == 0:
        samples = _finite_samples(samples)
        finite = samples[np.isfinite(samples)]
        if value_range is None:
            if finite.size == 0:
                raise InvalidHistogramError("cannot derive a range from no finite samples")
            value_range = (float(finite.min()), float(finite.max()))
        low, high = value_range
        if low == high:
            low, high = low - 0.5, high + 0.5
        if isinstance(bins, str):
            inside = finite[(finite >= low) & (finite <= high)]
            return check_edges(np.histogram_bin_edges(inside, bins=bins, range=(low, high)))
        return check_edges(np.linspace(low, high, int(bins) + 1))
    return check_edges(bins)


def make_histogram(samples, bins="fd", value_range=None) -> Histogram:
    """
    Histogram of samples for a bin specification (see bin_edges)
    """
    samples = _finite_samples(samples)
    edges = bin_edges(samples, bins, value_range)
    underflow = int(np.count_nonzero(samples < edges[0]))
    overflow = int(np.count_nonzero(samples > edges[-1]))
    inside = samples[(samples >= edges[0]) & (samples <= edges[-1])]
    counts, _ = np.histogram(inside, bins=edges)
    return Histogram(edges, counts, underflow, overflow)


def log_edges(low: float, high: float, count: int) -> np.ndarray:
    """
    count logarithmically spaced bins between two positive values
    """
    if not 0 < low < high:
        raise InvalidHistogramError(f"log bins need 0 < low < high, got ({low}, {high})")
    return np.geomspace(low, high, int(count) + 1)


def symmetric_log_edges(low: float, high: float, count_per_side: int) -> np.ndarray:
    """
    Log-spaced bins on [low, high] mirrored onto [-high, -low], joined by
    a central bin [-low, low]
    """
    positive = log_edges(low, high, count_per_side)
    return np.concatenate([-positive[::-1], positive])
