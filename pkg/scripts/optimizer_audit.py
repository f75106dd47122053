"""Compare the printed closed-form optimum, the lattice oracle and the exact solver.

For each random problem it records where the three land, whether each is
feasible, and the tight-constraint residual the closed form leaves behind.
"""
import argparse
import csv
import sys

import numpy as np

from uavrelay.exceptions import DivisionUndefinedError
from uavrelay.optimizer import (OptimizationProblem, agree_within_lattice, eq40_residual, kkt_residuals,
                                solve_analytic, solve_grid, solve_paper_closed_form)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("-n", type=int, default=200)
    ap.add_argument("--resolution", type=int, default=10_000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    w = csv.writer(sys.stdout)
    w.writerow(["g1", "e_th", "e_c", "cf_eta_bat", "cf_eta_ps", "cf_feasible", "cf_residual",
                "an_eta_bat", "an_eta_ps", "an_feasible", "grid_agrees", "kkt_ok"])
    disagreements = 0
    for _ in range(args.n):
        g1, e_th, e_c = rng.uniform(0, 5), rng.uniform(1e-3, 2), rng.uniform(0, 3)
        p = OptimizationProblem.from_constants(g1, e_th, e_c)
        try:
            cf = solve_paper_closed_form(p)
            cf_row = [cf.eta_bat, cf.eta_ps, int(cf.feasible), eq40_residual(p, cf.eta_bat, cf.eta_ps)]
        except DivisionUndefinedError:
            cf_row = ["", "", "", ""]
        an = solve_analytic(p)
        agree = agree_within_lattice(an, solve_grid(p, args.resolution), args.resolution)
        disagreements += not agree
        kkt = kkt_residuals(p, an).satisfied if an.feasible else ""
        w.writerow([g1, e_th, e_c, *cf_row, an.eta_bat, an.eta_ps, int(an.feasible), int(agree), kkt])
    print(f"# {disagreements} oracle disagreements out of {args.n}", file=sys.stderr)
    return 1 if disagreements else 0


if __name__ == "__main__":
    sys.exit(main())
