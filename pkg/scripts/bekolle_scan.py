"""Grid estimate of the Bekolle B2 constant for (1 - r^2)^s across s.

Exponents with s outside (-(eta + 1), eta + 1) make omega or 1/omega
non-integrable near the boundary; those rows report the quadrature failure.

    python scripts/bekolle_scan.py --eta 0
"""
import argparse

import numpy as np

from atomicframes.errors import QuadratureDivergence
from atomicframes.kernels import bekolle_ratio, default_carleson_grid, poly_weight


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--eta", type=float, default=0.0)
    ap.add_argument("--exponents", type=float, nargs="+", default=list(np.round(np.linspace(-0.9, 1.2, 8), 2)))
    ap.add_argument("--grid", type=int, default=12, help="squares per axis")
    args = ap.parse_args()
    grid = default_carleson_grid(args.grid, args.grid)
    print(f"{'s':>6} {'sup ratio':>12} {'argmax h':>10}")
    for s in args.exponents:
        try:
            res = bekolle_ratio(poly_weight(s), args.eta, grid)
            print(f"{s:6.2f} {res.sup_ratio:12.6f} {res.argmax.h:10.4f}")
        except QuadratureDivergence as e:
            print(f"{s:6.2f} {'diverges':>12}  ({e})")


if __name__ == "__main__":
    main()
