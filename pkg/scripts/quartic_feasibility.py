"""Map the feasible boundary amplitude for the quartic-potential problem.

The fixed-start quartic problem (L = v^2/2 - u^4/4) loses its solution
branch at a fold in the boundary value A: continuation in A converges up to
a critical amplitude and fails beyond it.  This script bisects for that
amplitude per (alpha, N) and prints the resulting table.
"""
import argparse

import numpy as np

from nablafrac import (Boundary, Formulation, FracOrder, Grid, Lagrangian,
                       VariationalProblem, solve)
from nablafrac.grid import DomainError


def feasible(alpha, N, A):
    p = VariationalProblem(Grid(0, N), FracOrder(alpha),
                           Formulation.RIEMANN_A, Boundary("fixed", A=A),
                           Lagrangian.quartic_potential())
    # continuation in A: warm-start each stage from the previous solution
    f = None
    for s in np.linspace(0.25, 1.0, 4):
        q = VariationalProblem(Grid(0, N), FracOrder(alpha),
                               Formulation.RIEMANN_A,
                               Boundary("fixed", A=A * s),
                               Lagrangian.quartic_potential())
        try:
            sol = solve(q, initial=f)
        except DomainError:
            return False
        if not sol.converged:
            return False
        f = sol.f
    return True


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--alphas", default="0.25,0.5,0.75")
    ap.add_argument("--sizes", default="6,8,12,16")
    ap.add_argument("--bisections", type=int, default=12)
    args = ap.parse_args()

    print(f"{'alpha':>6} {'N':>4} {'fold amplitude':>15}")
    for alpha in (float(s) for s in args.alphas.split(",")):
        for N in (int(s) for s in args.sizes.split(",")):
            lo, hi = 0.0, 4.0
            for _ in range(args.bisections):
                mid = (lo + hi) / 2
                if feasible(alpha, N, mid):
                    lo = mid
                else:
                    hi = mid
            print(f"{alpha:>6g} {N:>4d} {lo:>15.4f}")


if __name__ == "__main__":
    main()
