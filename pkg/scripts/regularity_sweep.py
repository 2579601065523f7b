#!/usr/bin/env python3
"""Regularity verdicts for Fueter transforms of z^d, the Cauchy-Fueter kernel and a few non-regular stems.

Example:
    python scripts/regularity_sweep.py --m 3 --max-degree 6 --samples 50
"""

import argparse

from slicelab.dirac import fueter_transform, regularity_verdict
from slicelab.stems import CauchyFueterKernel, identity_stem, square_lift


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--max-degree", type=int, default=5)
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--interpretation", choices=("diagonal", "jacobian"), default="diagonal")
    args = p.parse_args(argv)

    cases = [(f"fueter z^{d}", fueter_transform([[0] * d + [1]], args.m)) for d in range(1, args.max_degree + 1)]
    cases += [("cauchy-fueter kernel", CauchyFueterKernel(args.m, 1)), ("identity", identity_stem(args.m, 1)), ("square lift", square_lift(args.m, 1))]
    print(f"{'stem':<22} {'engine':<9} {'regular':<8} {'equiv':<6} {'worst CR':>10} {'worst D':>10}")
    for name, F in cases:
        v = regularity_verdict(F, args.samples, seed=args.seed, interp=args.interpretation)
        print(f"{name:<22} {v.details['engine']:<9} {str(v.regular):<8} {str(v.equivalence_ok):<6} {v.worst:10.2e} {v.worst_dirac:10.2e}")


if __name__ == "__main__":
    main()
