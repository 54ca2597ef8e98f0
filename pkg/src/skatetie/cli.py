"""``skatetie`` command line.

Exit codes: 0 success, 1 computation-domain error, 2 usage or validation error.
"""

from __future__ import annotations

import argparse
import csv
import sys
from decimal import Decimal, InvalidOperation

from . import estimate, mcsim, samalogue, tieprob
from .resultsio import (ALIASES, ResultsFormatError, ScenarioError, build_config,
                        format_time, group_by_skater, parse_scenario_values,
                        read_results, read_scenario)
from .samalogue import Program, format_points


class UsageError(Exception):
    pass


class DomainError(Exception):
    pass


def _emit_csv(out, header, rows):
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)


def _emit_table(out, header, rows):
    cells = [list(map(str, header))] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    for r in cells:
        out.write("  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() + "\n")


def _emit(args, header, rows):
    if args.output == "csv":
        _emit_csv(sys.stdout, header, rows)
    else:
        _emit_table(sys.stdout, header, rows)


def _fmt(p: float) -> str:
    return f"{p:.6g}"


def _permille(p: float) -> str:
    return f"{p * 1000:.3f}"


def _points_arg(text: str) -> int:
    try:
        d = Decimal(text)
    except InvalidOperation:
        raise argparse.ArgumentTypeError(f"not a points value: {text!r}") from None
    milli = d * 1000
    if milli != milli.to_integral_value():
        raise argparse.ArgumentTypeError(f"{text!r} has more than 3 decimals")
    return int(milli)


def _program_arg(text: str) -> Program:
    try:
        return Program.parse(text)
    except samalogue.SamalogueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _float_list(text: str) -> list[float]:
    try:
        vals = [float(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad number list {text!r}") from None
    if not vals:
        raise argparse.ArgumentTypeError("empty grid")
    return sorted(set(vals))


def _load_results(path):
    try:
        return read_results(path)
    except OSError as exc:
        raise UsageError(str(exc)) from None
    except ResultsFormatError as exc:
        raise UsageError(f"{path}: {exc}") from None


# -- points ---------------------------------------------------------------

def cmd_points(args):
    results = _load_results(args.results)
    totals, problems = [], []
    for name, rows in group_by_skater(results).items():
        try:
            totals.append((name, samalogue.pointsum(rows, args.program)))
        except samalogue.ProgramMismatch as exc:
            problems.append(f"{name}: {exc}")
    if problems:
        raise DomainError("results do not match the program:\n  " + "\n  ".join(problems))
    rows = [(rank, name, format_points(pts))
            for rank, name, pts in samalogue.standings(totals)]
    _emit(args, ("rank", "skater", "points"), rows)


# -- required-time ----------------------------------------------------------

def cmd_required_time(args):
    try:
        t = samalogue.required_time(args.target, args.current, args.distance, args.precision)
    except samalogue.SamalogueError as exc:
        raise UsageError(str(exc)) from None
    shown = format_time(t, args.precision)
    if args.output == "csv":
        _emit_csv(sys.stdout, ("target", "current", "distance_m", "required_time"),
                  [(format_points(args.target), format_points(args.current),
                    args.distance, shown)])
    else:
        gap = samalogue.margin_time(args.target - args.current, args.distance)
        print(f"required time on {args.distance} m: {shown}")
        print(f"(contribution needed {format_points(args.target - args.current)} points;"
              f" slowest tying time at {args.precision})")
        if not gap.exact:
            print(f"note: point gap is not a whole number of ms on {args.distance} m")


# -- scenario handling -----------------------------------------------------

_SCENARIO_FLAGS = ("delta", "sigma", "tau", "epsilon", "n_distances", "n_trials",
                   "seed", "discretization", "tie_rule")


def _config_from_args(args, **extra) -> mcsim.SimConfig:
    raw = {}
    if args.config:
        try:
            base = read_scenario(args.config)
        except OSError as exc:
            raise UsageError(str(exc)) from None
        except ScenarioError as exc:
            raise UsageError(f"{args.config}: {exc}") from None
        sc = base.scenario
        raw.update(delta=sc.delta, sigma=sc.sigma, tau=sc.tau, epsilon=sc.epsilon,
                   n_distances=sc.n_distances, n_trials=base.n_trials, seed=base.seed,
                   discretization=base.discretization, tie_rule=base.tie_rule)
    overrides = {k: str(getattr(args, k)) for k in _SCENARIO_FLAGS
                 if getattr(args, k, None) is not None}
    try:
        raw.update(parse_scenario_values(overrides))
        return build_config(raw, **extra)
    except ScenarioError as exc:
        raise UsageError(str(exc)) from None


def _probabilities(sc: tieprob.TieScenario) -> dict:
    fixed = tieprob.tie_prob_fixed(sc)
    rnd = tieprob.tie_prob_random_delta(sc) if sc.tau > 0 else None
    exact = tieprob.tie_prob_exact(sc)
    headline = rnd if rnd is not None else fixed
    return {"fixed": fixed, "random_delta": rnd, "exact": exact,
            "expected_trials": tieprob.expected_trials(headline) if headline > 0 else float("inf")}


def cmd_tie_prob(args):
    sc = _config_from_args(args).scenario
    pr = _probabilities(sc)
    if args.output == "csv":
        _emit_csv(sys.stdout,
                  ("sigma", "tau", "epsilon", "delta", "n_distances", "fixed",
                   "random_delta", "exact", "expected_trials"),
                  [(sc.sigma, sc.tau, sc.epsilon, sc.delta, sc.n_distances, _fmt(pr["fixed"]),
                    "" if pr["random_delta"] is None else _fmt(pr["random_delta"]),
                    _fmt(pr["exact"]), f"{pr['expected_trials']:.1f}")])
        return
    print(f"scenario: sigma={sc.sigma} tau={sc.tau} epsilon={sc.epsilon} "
          f"delta={sc.delta} n_distances={sc.n_distances}")
    print(f"fixed delta (density x width): {_fmt(pr['fixed'])}  ({_permille(pr['fixed'])} per mille)")
    if pr["random_delta"] is not None:
        print(f"random delta ~ N(0, tau^2):    {_fmt(pr['random_delta'])}  "
              f"({_permille(pr['random_delta'])} per mille)")
    print(f"exact normal interval:         {_fmt(pr['exact'])}  ({_permille(pr['exact'])} per mille)")
    print(f"expected trials until a tie:   {pr['expected_trials']:.1f}")


# -- estimate-sigma ----------------------------------------------------------

def cmd_estimate_sigma(args):
    results = _load_results(args.results)
    if not results:
        raise DomainError("no results to estimate from")
    samples = []
    for name, rows in group_by_skater(results).items():
        if len(rows) < 2:
            print(f"warning: {name} has {len(rows)} race(s); excluded", file=sys.stderr)
            continue
        samples.append(estimate.SkaterSample.from_results(name, rows))
    if not samples:
        raise DomainError("every skater has fewer than 2 races")
    rows = [(s.skater, len(s.points_per_race), _fmt(estimate.sample_variance(s)))
            for s in samples]
    sigma = estimate.pooled_sigma(samples)
    if args.output == "csv":
        _emit_csv(sys.stdout, ("skater", "races", "variance"),
                  rows + [("POOLED_SIGMA", sum(r[1] for r in rows), _fmt(sigma))])
    else:
        _emit_table(sys.stdout, ("skater", "races", "variance"), rows)
        print(f"pooled sigma (sqrt of mean n-1 variance): {_fmt(sigma)}")


# -- simulate ---------------------------------------------------------------

def cmd_simulate(args):
    extra = {"program": args.program, "baseline": args.baseline, "workers": args.workers}
    if args.n_distances is None and args.program != samalogue.SPRINT:
        args.n_distances = len(args.program)
    try:
        cfg = _config_from_args(args, **extra)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    sc = cfg.scenario
    if sc.tau > 0:
        res = mcsim.run_random_delta(cfg)
        target = tieprob.tie_prob_random_delta(sc)
    else:
        res = mcsim.run(cfg)
        target = tieprob.tie_prob_fixed(sc)
    z = res.z_score(target)
    if args.output == "csv":
        _emit_csv(sys.stdout,
                  ("ties", "n_trials", "p_hat", "std_error", "closed_form", "z", "seed",
                   "tie_rule", "discretization"),
                  [(res.ties, res.n_trials, _fmt(res.p_hat), _fmt(res.std_error),
                    _fmt(target), f"{z:.3f}", res.seed, cfg.tie_rule, cfg.discretization)])
    else:
        print(f"trials: {res.n_trials}  seed: {res.seed}  rule: {cfg.tie_rule}  "
              f"discretization: {cfg.discretization}")
        print(f"ties: {res.ties}")
        print(f"p_hat: {_fmt(res.p_hat)}  ({_permille(res.p_hat)} per mille)")
        print(f"std_error: {_fmt(res.std_error)}")
        print(f"closed_form: {_fmt(target)}  ({_permille(target)} per mille)")
        print(f"z: {z:.3f}")


# -- table ------------------------------------------------------------------

def cmd_table(args):
    rows = []
    for s in args.sigma:
        for t in args.tau:
            for e in args.epsilon:
                try:
                    sc = tieprob.TieScenario(sigma=s, tau=t, epsilon=e, delta=args.delta,
                                             n_distances=args.n_distances)
                except ValueError as exc:
                    raise UsageError(str(exc)) from None
                pr = _probabilities(sc)
                rnd = tieprob.tie_prob_random_delta(sc)
                rows.append((s, t, e, _fmt(pr["fixed"]), _fmt(rnd), _fmt(pr["exact"])))
    _emit(args, ("sigma", "tau", "epsilon", "fixed", "random_delta", "exact"), rows)


def _add_scenario_flags(p, with_sim=False):
    p.add_argument("--sigma", type=float)
    p.add_argument("--epsilon", type=float)
    p.add_argument("--delta", type=float)
    p.add_argument("--tau", type=float)
    p.add_argument("--n-distances", dest="n_distances", type=int)
    if with_sim:
        p.add_argument("--n-trials", dest="n_trials", type=int)
        p.add_argument("--discretization",
                       choices=list(mcsim.DISCRETIZATIONS) + ["truncate", "round"])
        p.add_argument("--tie-rule", dest="tie_rule",
                       choices=list(mcsim.TIE_RULES) + ["exact"])


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=("human", "csv"), default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--config", default=argparse.SUPPRESS,
                        help="scenario file (key=value lines)")

    parser = argparse.ArgumentParser(prog="skatetie", parents=[common],
                                     description="Samalogue pointsums and tie probabilities.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("points", parents=[common], help="pointsums and standings from a results CSV")
    p.add_argument("results")
    p.add_argument("--program", type=_program_arg, default=samalogue.SPRINT,
                   help="comma list of distances or sprint/allround (default sprint)")
    p.set_defaults(func=cmd_points)

    p = sub.add_parser("required-time", parents=[common],
                       help="time needed on the last distance to reach a target pointsum",
                       description="Prints the slowest time on DISTANCE whose truncated points "
                                   "bring CURRENT exactly to TARGET. Several milliseconds can map "
                                   "to the same points; the largest (most lenient) one is shown.")
    p.add_argument("target", type=_points_arg)
    p.add_argument("current", type=_points_arg)
    p.add_argument("distance", type=int)
    p.add_argument("--precision", choices=samalogue.PRECISIONS, default=samalogue.HUNDREDTHS)
    p.set_defaults(func=cmd_required_time)

    p = sub.add_parser("tie-prob", parents=[common], help="closed-form tie probabilities")
    _add_scenario_flags(p)
    p.set_defaults(func=cmd_tie_prob)

    p = sub.add_parser("estimate-sigma", parents=[common], help="pooled per-race sigma from a results CSV")
    p.add_argument("results")
    p.set_defaults(func=cmd_estimate_sigma)

    p = sub.add_parser("simulate", parents=[common], help="seeded Monte Carlo tie frequency")
    _add_scenario_flags(p, with_sim=True)
    p.add_argument("--program", type=_program_arg, default=samalogue.SPRINT)
    p.add_argument("--baseline", type=float, default=37.0, help="mean 500-m time in seconds")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("table", parents=[common], help="CSV grid of closed-form probabilities")
    p.add_argument("--sigma", type=_float_list, default=[0.5])
    p.add_argument("--tau", type=_float_list, default=[0.0])
    p.add_argument("--epsilon", type=_float_list, default=[0.005])
    p.add_argument("--delta", type=float, default=0.0)
    p.add_argument("--n-distances", dest="n_distances", type=int, default=4)
    p.set_defaults(func=cmd_table)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name, default in (("output", "human"), ("seed", None), ("config", None)):
        if not hasattr(args, name):
            setattr(args, name, default)
    for key in ("discretization", "tie_rule"):
        if getattr(args, key, None) in ALIASES:
            setattr(args, key, ALIASES[getattr(args, key)])
    try:
        args.func(args)
    except UsageError as exc:
        print(f"skatetie {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, ValueError) as exc:
        print(f"skatetie {args.command}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
