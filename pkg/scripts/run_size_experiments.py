#!/usr/bin/env python3
"""Rejection rates under the null for every bundled test.

Reproduces the size numbers the acceptance suite checks (2000
replications at T = 200, nominal 5%) plus the sup-F and Johansen
rank experiments.  Equivalent CLI:

    cointlab montecarlo --experiment all --reps 2000 --t 200 --seed 2024
"""

import argparse

from cointlab import montecarlo as mc


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--reps", type=int, default=2000)
    ap.add_argument("--t", type=int, default=200)
    ap.add_argument("--seed", type=int, default=2024)
    args = ap.parse_args()

    for name in sorted(mc.SIZE_EXPERIMENTS):
        res = mc.SIZE_EXPERIMENTS[name](args.seed, n_reps=args.reps, t=args.t)
        flag = "ok" if abs(res.rejection_rate - 0.05) <= 0.02 else "OUTSIDE +/-2pp"
        print(f"{name:>16}: {res.rejection_rate:.4f}  ({flag})")

    supf = mc.supf_size(args.seed, n_reps=1000, t=120)
    print(f"{'supf_0v1':>16}: {supf.rejection_rate:.4f}")

    picks, med_err = mc.johansen_rank_experiment(args.seed, n_reps=200, t=400)
    print(f"{'johansen rank-1':>16}: picked in {picks}/200, median beta error {med_err:.4f}")


if __name__ == "__main__":
    main()
