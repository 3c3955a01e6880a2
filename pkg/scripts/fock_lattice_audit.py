"""Sampling audit of square lattices in the Fock space for a range of spacings.

Denser lattices give larger lower bounds; the upper bound grows with the
number of points. Bounds are for the degree-N truncation only.

    python scripts/fock_lattice_audit.py --degree 16 --half-width 2
"""
import argparse

import numpy as np

from atomicframes.kernels import Fock
from atomicframes.sampling import build_basis, sampling_audit, square_lattice


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--alpha", type=float, default=1.0)
    ap.add_argument("--degree", type=int, default=12)
    ap.add_argument("--half-width", type=float, default=2.0)
    ap.add_argument("--spacings", type=float, nargs="+", default=[0.25, 0.5, 0.75, 1.0, 1.5])
    ap.add_argument("--norm-mode", choices=["truncated", "closed_form"], default="truncated")
    args = ap.parse_args()
    B = build_basis(Fock(args.alpha), args.degree)
    print(f"{'spacing':>8} {'points':>7} {'A':>12} {'B':>12} {'min trunc':>10}")
    for s in args.spacings:
        pts = square_lattice(s, args.half_width)
        audit = sampling_audit(B, pts, norm_mode=args.norm_mode)
        A = audit.certificate.lower_A
        A_txt = f"{A:12.4e}" if A is not None else f"{'none':>12}"
        print(f"{s:8.3f} {len(pts):7d} {A_txt} {audit.certificate.upper_B:12.4e} "
              f"{np.min(audit.truncation_diagnostics):10.6f}")


if __name__ == "__main__":
    main()
