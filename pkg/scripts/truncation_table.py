"""Ratio of truncated to closed-form kernel norms as the degree grows.

    python scripts/truncation_table.py [--space bergman|fock] [--param 0 1 2.5]
"""
import argparse

import numpy as np

from atomicframes.kernels import BergmanStandard, Fock, kernel_norm
from atomicframes.sampling import build_basis, truncated_kernel_norm


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--space", choices=["bergman", "fock"], default="bergman")
    ap.add_argument("--param", type=float, nargs="+", default=None, help="eta (Bergman) or alpha (Fock) values")
    ap.add_argument("--degrees", type=int, nargs="+", default=[8, 16, 32, 64])
    args = ap.parse_args()
    if args.space == "bergman":
        params, radii, make = args.param or [0.0, 1.0, 2.5], [0.5, 0.7, 0.9, 0.95], BergmanStandard
    else:
        params, radii, make = args.param or [0.5, 1.0, 2.0], [1.0, 2.0, 3.0], Fock
    print(f"{'param':>6} {'|lam|':>6} " + " ".join(f"N={n:<8}" for n in args.degrees))
    for p in params:
        spec = make(p)
        bases = [build_basis(spec, n) for n in args.degrees]
        for r in radii:
            ratios = [truncated_kernel_norm(B, r) / kernel_norm(spec, r) for B in bases]
            print(f"{p:6.2f} {r:6.2f} " + " ".join(f"{x:<10.6f}" for x in ratios))


if __name__ == "__main__":
    main()
