#
# SPDX-FileCopyrightText: 2024 collisionengine developers
#
# SPDX-License-Identifier: GPL-3.0-or-later
#

"""Distribution of the ratio eta = W / Q of two independent Gaussians

With

    a(eta) = sqrt(eta^2 / s_W^2 + 1 / s_Q^2)
    b(eta) = m_W eta / s_W^2 + m_Q / s_Q^2
    c      = m_W^2 / s_W^2 + m_Q^2 / s_Q^2
    d(eta) = exp((b^2 - c a^2) / (2 a^2))

the density is

    p(eta) = b d / (sqrt(2 pi) s_W s_Q a^3) * erf(b / (sqrt(2) a))
             + exp(-c / 2) / (pi s_W s_Q a^2)

and decays as eta^-2 on both sides. The "shifted" bracket replaces
erf(x) by 1 + erf(x); it is kept for comparison only and does not
integrate to one.
"""

from dataclasses import dataclass
import logging
import numpy as np
from scipy import integrate, special
from collisionengine.exceptions import ParameterRangeError

logger = logging.getLogger(__name__)

BRACKETS = ("hinkley", "shifted")
# stands in for an exact zero in the orthant formula, whose limit is continuous
_ZERO_OFFSET = 1e-150


@dataclass(frozen=True)
class RatioPdfParams:
    """
    Means and standard deviations of the work and input heat Gaussians
    """

    mean_work: float
    std_work: float
    mean_heat: float
    std_heat: float

    def __post_init__(self):
        values = (self.mean_work, self.std_work, self.mean_heat, self.std_heat)
        if not all(np.isfinite(value) for value in values):
            raise ParameterRangeError(f"ratio parameters must be finite, got {values}")
        if not (self.std_work > 0 and self.std_heat > 0):
            raise ParameterRangeError(
                f"standard deviations must be positive, got ({self.std_work}, {self.std_heat})"
            )

    @classmethod
    def from_fits(cls, work_fit, heat_fit) -> "RatioPdfParams":
        """
        Parameters from Gaussian fits of W and Q_in
        """
        return cls(work_fit.mean, work_fit.std, heat_fit.mean, heat_fit.std)


def _check_eta(eta) -> np.ndarray:
    eta = np.asarray(eta, dtype=float)
    if not np.all(np.isfinite(eta)):
        raise ParameterRangeError("efficiency values must be finite")
    return eta


def ratio_pdf(eta, params: RatioPdfParams, bracket: str = "hinkley"):
    """
    Density of W / Q at eta

    return:
       density: float or array shaped like eta
    """
    if bracket not in BRACKETS:
        raise ParameterRangeError(f"unknown bracket {bracket!r}, expected one of {BRACKETS}")
    if bracket == "shifted":
        logger.warning("evaluating the un-normalized 1 + erf bracket of the ratio density")
    density = _density(_check_eta(eta), params, bracket == "shifted")
    return density if density.ndim else float(density)


def _density(eta, params, shifted_bracket):
    var_work, var_heat = params.std_work**2, params.std_heat**2
    a = np.sqrt(eta**2 / var_work + 1.0 / var_heat)
    b = params.mean_work * eta / var_work + params.mean_heat / var_heat
    c = params.mean_work**2 / var_work + params.mean_heat**2 / var_heat
    d = np.exp((b**2 - c * a**2) / (2.0 * a**2))
    scale = params.std_work * params.std_heat
    bracket_value = special.erf(b / (np.sqrt(2.0) * a))
    if shifted_bracket:
        bracket_value = 1.0 + bracket_value
    density = b * d / (np.sqrt(2.0 * np.pi) * scale * a**3) * bracket_value + np.exp(
        -0.5 * c
    ) / (np.pi * scale * a**2)
    return density


def ratio_cdf(eta, params: RatioPdfParams):
    """
    Distribution function P(W / Q <= eta), from bivariate normal orthant
    probabilities of (W - eta Q, Q) expressed with Owen's T function

    return:
       probability: float or array shaped like eta
    """
    eta = _check_eta(eta)
    spread = np.sqrt(params.std_work**2 + eta**2 * params.std_heat**2)
    upper = (eta * params.mean_heat - params.mean_work) / spread
    lower = np.full_like(upper, -params.mean_heat / params.std_heat)
    correlation = -eta * params.std_heat / spread
    complement = params.std_work / spread
    upper = np.where(upper == 0.0, _ZERO_OFFSET, upper)
    lower = np.where(lower == 0.0, _ZERO_OFFSET, lower)
    probability = 2.0 * (
        special.owens_t(upper, (lower - correlation * upper) / (upper * complement))
        + special.owens_t(lower, (upper - correlation * lower) / (lower * complement))
    ) + np.where(upper * lower < 0, 1.0, 0.0)
    probability = np.clip(probability, 0.0, 1.0)
    return probability if probability.ndim else float(probability)


def ratio_normalization(params: RatioPdfParams, bound: float = np.inf, bracket: str = "hinkley") -> float:
    """
    Integral of the ratio density over [-bound, bound], the whole line by
    default, by adaptive quadrature in theta = arctan(eta) where the
    integrand stays bounded
    """
    if bracket not in BRACKETS:
        raise ParameterRangeError(f"unknown bracket {bracket!r}, expected one of {BRACKETS}")
    shifted_bracket = bracket == "shifted"

    def integrand(theta):
        return _density(np.tan(theta), params, shifted_bracket) / np.cos(theta) ** 2

    limit = float(np.arctan(bound))
    points = [0.0]
    if params.mean_heat != 0:
        peak = float(np.arctan(params.mean_work / params.mean_heat))
        if abs(peak) < limit:
            points.append(peak)
    value, _ = integrate.quad(
        integrand, -limit, limit, points=sorted(set(points)), limit=500, epsabs=1e-12, epsrel=1e-12
    )
    return float(value)


def sample_ratio(params: RatioPdfParams, count: int, rng: np.random.Generator) -> np.ndarray:
    """
    Monte Carlo draws of W / Q for independent Gaussians W and Q,
    rejecting |Q| < 1e-300
    """
    work = rng.normal(params.mean_work, params.std_work, count)
    heat = rng.normal(params.mean_heat, params.std_heat, count)
    keep = np.abs(heat) >= 1e-300
    return work[keep] / heat[keep]
