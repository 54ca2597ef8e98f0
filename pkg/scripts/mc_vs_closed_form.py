"""Monte Carlo against the closed forms over a small scenario grid; CSV to stdout."""

import argparse
import csv
import sys
import time

from skatetie import SimConfig, TieScenario, run, run_random_delta
from skatetie.tieprob import tie_prob_fixed, tie_prob_random_delta


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-trials", type=int, default=2_000_000)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["sigma", "tau", "delta", "epsilon", "closed_form", "p_hat", "std_error", "z", "seconds"])
    for sigma in (0.25, 0.5):
        for tau, delta in ((0.0, 0.0), (0.0, 0.2), (0.25, 0.0)):
            for eps in (0.005, 0.001):
                sc = TieScenario(sigma=sigma, epsilon=eps, tau=tau, delta=delta)
                cfg = SimConfig(sc, n_trials=args.n_trials, seed=args.seed, workers=args.workers)
                start = time.perf_counter()
                if tau:
                    res, target = run_random_delta(cfg), tie_prob_random_delta(sc)
                else:
                    res, target = run(cfg), tie_prob_fixed(sc)
                w.writerow([sigma, tau, delta, eps, f"{target:.6g}", f"{res.p_hat:.6g}",
                            f"{res.std_error:.3g}", f"{res.z_score(target):+.2f}",
                            f"{time.perf_counter() - start:.2f}"])


if __name__ == "__main__":
    main()
