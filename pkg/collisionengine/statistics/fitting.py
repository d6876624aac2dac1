#
# SPDX-FileCopyrightText: 2024 collisionengine developers
#
# SPDX-License-Identifier: GPL-3.0-or-later
#

"""Gaussian fits, power-law tail fits and Kolmogorov-Smirnov distances
"""

from dataclasses import dataclass
import logging
import numpy as np
from scipy import stats
from collisionengine.exceptions import (
    InsufficientDataError,
    ParameterRangeError,
)
from collisionengine.statistics.histogram import Histogram

logger = logging.getLogger(__name__)

MIN_TAIL_BINS = 5


@dataclass(frozen=True)
class GaussianFit:
    """
    Sample mean, unbiased sample standard deviation and sample count.
    degenerate is set when all samples are equal.
    """

    mean: float
    std: float
    count: int
    degenerate: bool = False

    @property
    def stderr(self) -> float:
        """Standard error of the mean"""
        return self.std / np.sqrt(self.count)

    def pdf(self, values):
        """Normal density with the fitted parameters"""
        return stats.norm.pdf(values, loc=self.mean, scale=self.std)

    def cdf(self, values):
        """Normal distribution function with the fitted parameters"""
        return stats.norm.cdf(values, loc=self.mean, scale=self.std)


def fit_gaussian(samples) -> GaussianFit:
    """
    Fit a normal distribution by its sample moments

    return:
       fit: GaussianFit
    """
    samples = np.asarray(samples, dtype=float).ravel()
    if samples.size < 2:
        raise InsufficientDataError(f"a Gaussian fit needs at least 2 samples, got {samples.size}")
    mean = float(np.mean(samples))
    std = float(np.std(samples, ddof=1))
    degenerate = std == 0.0
    if degenerate:
        logger.warning("all %d samples equal %r, fitted standard deviation is zero", samples.size, mean)
    return GaussianFit(mean, std, int(samples.size), degenerate)


def ks_distance(samples, cdf) -> float:
    """
    Supremum distance between the empirical distribution of samples and
    a reference distribution function

    return:
       distance: value in [0, 1]
    """
    samples = np.asarray(samples, dtype=float).ravel()
    if samples.size == 0:
        raise InsufficientDataError("no samples for a Kolmogorov-Smirnov distance")
    return float(stats.kstest(samples, cdf).statistic)


def normal_ks_distance(samples) -> float:
    """
    KS distance of standardized samples against the standard normal
    """
    fit = fit_gaussian(samples)
    if fit.degenerate:
        return 1.0
    standardized = (np.asarray(samples, dtype=float) - fit.mean) / fit.std
    return ks_distance(standardized, stats.norm.cdf)


@dataclass(frozen=True)
class TailFit:
    """
    Slope of log density against log value and its standard error.
    exponent is negative for a decaying tail.
    """

    exponent: float
    stderr: float
    intercept: float
    bins_used: int
    fit_range: tuple


def tail_exponent_fit(histogram: Histogram, fit_range) -> TailFit:
    """
    Least-squares power-law fit p(x) ~ x**exponent over the bins of a
    histogram lying entirely inside fit_range, natural logarithms,
    empty bins skipped
    """
    low, high = (float(bound) for bound in fit_range)
    if not 0 < low < high:
        raise ParameterRangeError(f"tail fit range must satisfy 0 < low < high, got {fit_range}")
    edges = histogram.edges
    inside = (edges[:-1] >= low) & (edges[1:] <= high) & (histogram.counts > 0)
    used = int(np.count_nonzero(inside))
    if used < MIN_TAIL_BINS:
        raise InsufficientDataError(
            f"tail fit needs {MIN_TAIL_BINS} nonempty bins in [{low}, {high}], found {used}"
        )
    centers = np.sqrt(edges[:-1][inside] * edges[1:][inside])
    density = histogram.density()[inside]
    regression = stats.linregress(np.log(centers), np.log(density))
    return TailFit(
        float(regression.slope),
        float(regression.stderr),
        float(regression.intercept),
        used,
        (low, high),
    )


def default_tail_range(samples, low_factor: float = 5.0, high_quantile: float = 0.99):
    """
    Scale-free tail range [low_factor * median(|x|), quantile(|x|)]
    """
    magnitudes = np.abs(np.asarray(samples, dtype=float).ravel())
    magnitudes = magnitudes[np.isfinite(magnitudes)]
    if magnitudes.size == 0:
        raise InsufficientDataError("no finite samples to place a tail range")
    return (
        float(low_factor * np.median(magnitudes)),
        float(np.quantile(magnitudes, high_quantile)),
    )
