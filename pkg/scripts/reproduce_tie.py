"""Walk through the Hamar 2017 junior sprint tie and the tie-probability numbers."""

from pathlib import Path

from skatetie import (SPRINT, Program, TieScenario, expected_trials, pointsum, pooled_sigma,
                      read_results, required_time, tie_prob_exact, tie_prob_fixed,
                      tie_prob_random_delta)
from skatetie.estimate import SkaterSample
from skatetie.resultsio import format_time, group_by_skater
from skatetie.samalogue import deficit, format_points, margin_time

DATA = Path(__file__).resolve().parents[1] / "tests" / "data" / "allan_odin.csv"


def main():
    groups = group_by_skater(read_results(DATA))
    allan, odin = groups["Allan Dahl Johansson"], groups["Odin By Farstad"]

    for n, label in [(2, "after day 1"), (3, "after the second 500 m"), (4, "final")]:
        prog = Program(SPRINT.distances[:n])
        a, o = pointsum(allan[:n], prog), pointsum(odin[:n], prog)
        gap = deficit(a, o)
        print(f"{label:>24}: Allan {format_points(a)}  Odin {format_points(o)}  "
              f"gap {format_points(gap)}")
    a3 = pointsum(allan[:3], Program((500, 1000, 500)))
    o3 = pointsum(odin[:3], Program((500, 1000, 500)))
    print(f"margin needed on the last 1000 m: {margin_time(deficit(a3, o3), 1000).time / 1000:.2f} s")
    t = required_time(pointsum(allan, SPRINT), o3, 1000)
    print(f"Odin's required 1000 m after Allan's 1:12.35: {format_time(t)}")

    samples = [SkaterSample.from_results(k, v) for k, v in groups.items()]
    print(f"pooled per-race sigma: {pooled_sigma(samples):.4f}")

    print("\nclosed forms (sigma = 0.5):")
    for tau in (0.0, 0.25):
        for eps in (0.005, 0.001):
            sc = TieScenario(sigma=0.5, epsilon=eps, tau=tau)
            p = tie_prob_random_delta(sc) if tau else tie_prob_fixed(sc)
            print(f"  tau={tau:<5} epsilon={eps:<6} p={p:.6f} ({p * 1000:.2f} per mille)"
                  f"  1 in {expected_trials(p):.0f}"
                  + ("" if tau else f"  exact interval {tie_prob_exact(sc):.6f}"))


if __name__ == "__main__":
    main()
