"""How often do official (hundredth-second) pointsums tie exactly?

Compares exact integer pointsum equality with continuous windows of
half-width 0.005 and 0.0025 for a few programs and discretisation modes.
"""

import argparse

from skatetie import Program, SimConfig, TieScenario, run
from skatetie.mcsim import EXACT, ROUND, TRUNCATE, WINDOW
from skatetie.tieprob import tie_prob_fixed

PROGRAMS = {"sprint": (500, 1000, 500, 1000), "small-allround": (500, 3000, 1500, 5000),
            "4x500": (500, 500, 500, 500)}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-trials", type=int, default=2_000_000)
    ap.add_argument("--seed", type=int, default=42)
    args = ap.parse_args()

    print(f"{'program':>15} {'mode':>22} {'exact':>9} {'win.005':>9} {'cf.005':>9} {'cf.0025':>9}")
    for name, dists in PROGRAMS.items():
        prog = Program(dists)
        sc = TieScenario(sigma=0.5, epsilon=0.005, n_distances=len(dists))
        half = TieScenario(sigma=0.5, epsilon=0.0025, n_distances=len(dists))
        for mode in (TRUNCATE, ROUND):
            base = dict(program=prog, n_trials=args.n_trials, seed=args.seed, discretization=mode)
            ex = run(SimConfig(sc, tie_rule=EXACT, **base))
            win = run(SimConfig(sc, tie_rule=WINDOW, **base))
            print(f"{name:>15} {mode:>22} {ex.p_hat:9.6f} {win.p_hat:9.6f} "
                  f"{tie_prob_fixed(sc):9.6f} {tie_prob_fixed(half):9.6f}")


if __name__ == "__main__":
    main()
