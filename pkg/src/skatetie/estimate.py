"""Per-race standard deviation from observed 500-m-equivalent times."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .samalogue import RaceResult, to_points


@dataclass(frozen=True)
class SkaterSample:
    skater: str
    points_per_race: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "points_per_race",
                           tuple(float(x) for x in self.points_per_race))
        if len(self.points_per_race) < 2:
            raise ValueError(
                f"{self.skater}: need at least 2 races, got {len(self.points_per_race)}")

    @classmethod
    def from_results(cls, skater: str, results: Sequence[RaceResult]) -> "SkaterSample":
        # milli-points -> points happens exactly once, here
        return cls(skater, tuple(to_points(r.time, r.distance) / 1000 for r in results))


def sample_variance(sample: SkaterSample) -> float:
    """Unbiased (n - 1) variance about the sample mean, two-pass."""
    xs = sample.points_per_race
    n = len(xs)
    mean = math.fsum(xs) / n
    dev = [x - mean for x in xs]
    # compensated two-pass: subtract the residual mean of the deviations
    corr = math.fsum(dev)
    return max((math.fsum(d * d for d in dev) - corr * corr / n) / (n - 1), 0.0)


def pooled_sigma(samples: Sequence[SkaterSample]) -> float:
    """Square root of the unweighted mean of per-skater variances."""
    if not samples:
        raise ValueError("no samples to pool")
    return math.sqrt(math.fsum(sample_variance(s) for s in samples) / len(samples))
