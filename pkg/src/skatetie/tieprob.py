"""Gaussian closed forms for the chance of a pointsum tie.

Each skater's per-race 500-m-equivalent time is modelled as N(mu, sigma^2),
independent across races.  Over ``n`` races the pointsum difference is
N(n*delta, 2*n*sigma^2).  A "tie" means the difference falls inside
(-epsilon, epsilon).

Units: delta, sigma, tau are seconds on the 500-m scale; epsilon is in
points, which on that scale are also seconds.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

SQRT2 = math.sqrt(2.0)
INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


class ProbabilityClamped(UserWarning):
    """A linearised closed form exceeded 1 and was clamped."""


@dataclass(frozen=True)
class SkaterAbility:
    mu: float
    sigma: float

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")


@dataclass(frozen=True)
class TieScenario:
    """Parameters of the tie model.  ``tau == 0`` means delta is fixed."""

    sigma: float = 0.5
    epsilon: float = 0.005
    delta: float = 0.0
    tau: float = 0.0
    n_distances: int = 4

    def __post_init__(self):
        for name in ("sigma", "epsilon", "delta", "tau"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if not self.sigma > 0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")
        if not self.epsilon > 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if self.tau < 0:
            raise ValueError(f"tau must be >= 0, got {self.tau}")
        if int(self.n_distances) != self.n_distances or self.n_distances < 1:
            raise ValueError(f"n_distances must be a positive integer, got {self.n_distances}")

    @property
    def diff_mean(self) -> float:
        return self.n_distances * self.delta

    @property
    def diff_sd(self) -> float:
        return math.sqrt(2.0 * self.n_distances) * self.sigma


def normal_pdf(z: float) -> float:
    return INV_SQRT_2PI * math.exp(-0.5 * z * z)


def normal_cdf(z: float) -> float:
    # erfc keeps full relative precision in the lower tail
    return 0.5 * math.erfc(-z / SQRT2)


def _clamp(p: float) -> float:
    if p > 1.0:
        warnings.warn(f"closed form gave {p:.6g} > 1; clamped", ProbabilityClamped,
                      stacklevel=3)
        return 1.0
    return max(p, 0.0)


def tie_prob_fixed(scenario: TieScenario) -> float:
    """Density-times-width approximation at the scenario's fixed delta.

    For four races this is phi(4 delta / (sqrt(8) sigma)) * 2 epsilon / (sqrt(8) sigma),
    i.e. exp(-delta^2/sigma^2) / sqrt(2 pi) * 2 epsilon / (sqrt(8) sigma).
    """
    sd = scenario.diff_sd
    return _clamp(normal_pdf(scenario.diff_mean / sd) * 2.0 * scenario.epsilon / sd)


def tie_prob_random_delta(scenario: TieScenario) -> float:
    """Tie probability with delta ~ N(0, tau^2) integrated out.

    Marginally the difference is N(0, 2 n sigma^2 + n^2 tau^2); for n = 4 this
    gives the fixed-delta value at zero times 1/sqrt(1 + 2 tau^2/sigma^2).
    """
    n, s, t = scenario.n_distances, scenario.sigma, scenario.tau
    base = INV_SQRT_2PI * 2.0 * scenario.epsilon / scenario.diff_sd
    return _clamp(base / math.sqrt(1.0 + n * t * t / (2.0 * s * s)))


def interval_prob(mean: float, sd: float, half_width: float) -> float:
    """P(|Z| < half_width) for Z ~ N(mean, sd^2)."""
    if half_width <= 0:
        return 0.0
    a = (-half_width - mean) / sd
    b = (half_width - mean) / sd
    if a > 0:
        # both limits in the upper tail: difference of survival functions
        return normal_cdf(-a) - normal_cdf(-b)
    return normal_cdf(b) - normal_cdf(a)


def tie_prob_exact(scenario: TieScenario) -> float:
    """Exact P(|Z| < epsilon) at fixed delta, without the density linearisation."""
    return interval_prob(scenario.diff_mean, scenario.diff_sd, scenario.epsilon)


def expected_trials(p: float) -> float:
    """Mean number of independent competitions until the first tie."""
    if not 0 < p <= 1:
        raise ValueError(f"need 0 < p <= 1, got {p}")
    return 1.0 / p
