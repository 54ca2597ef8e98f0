"""Samalogue pointsums, tie probabilities and a Monte Carlo cross-check."""

from .samalogue import (SPRINT, Program, RaceResult, compare_at_precision, deficit,
                        margin_time, pointsum, required_time, to_points)
from .tieprob import (TieScenario, expected_trials, normal_cdf, normal_pdf,
                      tie_prob_exact, tie_prob_fixed, tie_prob_random_delta)
from .estimate import SkaterSample, pooled_sigma, sample_variance
from .mcsim import SimConfig, SimResult, run, run_random_delta
from .resultsio import format_time, parse_time, read_results, read_scenario

__version__ = "0.1.0"
