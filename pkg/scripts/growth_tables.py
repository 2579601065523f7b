#!/usr/bin/env python3
"""Print growth-bound tables for the extremal lifts along the positive real ray.

Example:
    python scripts/growth_tables.py --k 1 2 3 --steps 8
"""

import argparse

from slicelab.clifford import CliffordNumber
from slicelab.growth import Ball, covering_minimum, halfplane_generator, koebe_generator, scan_ray


def table(title, rows):
    print(title)
    print(f"{'rho':>8} {'lower':>12} {'|f|':>12} {'upper':>12}  ok")
    for r in rows:
        print(f"{r.rho:8.4f} {r.lower:12.6f} {r.abs_f:12.6f} {r.upper:12.6f}  {'y' if r.passed else 'n'}")
    print()


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--m", type=int, default=3, help="number of Clifford generators")
    p.add_argument("--k", type=int, nargs="+", default=[1, 2], help="symmetry orders for the Koebe lifts")
    p.add_argument("--steps", type=int, default=10)
    p.add_argument("--eps", type=float, default=0.02)
    p.add_argument("--covering", action="store_true", help="also print sampled covering radii")
    args = p.parse_args(argv)

    I = CliffordNumber.blade(args.m, 1)
    for k in args.k:
        F = koebe_generator(k).lift(args.m)
        theorem = "starlike" if k == 1 else "kfold"
        table(f"Koebe lift, k={k} ({theorem} bounds)", scan_ray(F, I, Ball(), [1.0], args.steps, theorem, k, args.eps))
        if args.covering:
            print(f"covering minimum: {covering_minimum(F):.6f}  (2^(-2/k) = {2 ** (-2 / k):.6f})\n")
    F = halfplane_generator().lift(args.m)
    table("half-plane lift (convex bounds)", scan_ray(F, I, Ball(), [1.0], args.steps, "convex", eps=args.eps))


if __name__ == "__main__":
    main()
