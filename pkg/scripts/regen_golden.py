"""Regenerate tests/golden/*.json from the bundled fixtures.

The Fock-lattice audit is cross-checked against an independent Rayleigh-quotient
minimisation before anything is written; a mismatch aborts the run.

    python scripts/regen_golden.py [--check]
"""
import argparse
import contextlib
import io
import json
import sys
from pathlib import Path

import numpy as np

from atomicframes import cli

ROOT = Path(__file__).resolve().parents[1]
FIXTURES = ROOT / "tests" / "fixtures"
GOLDEN = ROOT / "tests" / "golden"


def render(entry):
    """Run one manifest entry and return (exit code, report text)."""
    argv = [entry["command"], "-i", str(FIXTURES / entry["fixture"]), "-o", "-"] + entry.get("args", [])
    out = io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(io.StringIO()):
        code = cli.main(argv)
    return code, out.getvalue()


def cross_check_fock(report, n_random=200_000, seed=7):
    from atomicframes.kernels import Fock
    from atomicframes.sampling import build_basis, normalized_kernel_family, square_lattice

    doc = json.loads((FIXTURES / "fock_lattice_audit.json").read_text())
    B = build_basis(Fock(doc["kernel"].get("alpha", 1.0)), doc["degree"])
    pts = square_lattice(doc["points"]["spacing"], doc["points"]["half_width"])
    F = normalized_kernel_family(B, pts)
    # Rayleigh quotient of the frame operator by direct summation over sampled unit vectors
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((n_random, B.dim)) + 1j * rng.standard_normal((n_random, B.dim))
    X /= np.linalg.norm(X, axis=1, keepdims=True)
    q = np.sum(np.abs(X @ F.vectors.conj().T) ** 2, axis=1)
    cert = report["result"]["certificate"]
    A, Bnd = cert["lower_A"], cert["upper_B"]
    # frame operator by explicit outer-product summation, extremes by shifted power iteration
    S = sum(np.outer(f, f.conj()) for f in F.vectors)
    lam_max = _power(S, rng)
    lam_min = lam_max - _power(lam_max * np.eye(B.dim) - S, rng)
    ok = (q.min() >= A * (1 - 1e-9) and q.max() <= Bnd * (1 + 1e-9)
          and abs(lam_min - A) <= 1e-9 * Bnd and abs(lam_max - Bnd) <= 1e-9 * Bnd)
    print(f"fock lattice oracle: sampled [{q.min():.6g}, {q.max():.6g}], "
          f"power iteration [{lam_min:.10g}, {lam_max:.10g}] vs certified [{A:.10g}, {Bnd:.10g}]")
    return ok


def _power(M, rng, iters=20000):
    v = rng.standard_normal(M.shape[0]) + 0j
    for _ in range(iters):
        v = M @ v
        v /= np.linalg.norm(v)
    return float(np.real(np.vdot(v, M @ v)))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--check", action="store_true", help="compare against committed goldens instead of writing")
    args = ap.parse_args(argv)
    manifest = json.loads((FIXTURES / "manifest.json").read_text())
    GOLDEN.mkdir(exist_ok=True)
    bad = 0
    for entry in manifest:
        code, text = render(entry)
        if code != entry["exit"]:
            print(f"{entry['name']}: exit {code}, manifest says {entry['exit']}")
            bad += 1
            continue
        if entry["name"] == "fock_lattice_audit" and not cross_check_fock(json.loads(text)):
            print("fock lattice audit disagrees with the sampling oracle; not writing goldens")
            return 1
        path = GOLDEN / f"{entry['name']}.json"
        if args.check:
            if not path.exists() or path.read_text() != text:
                print(f"{entry['name']}: differs from golden")
                bad += 1
        else:
            path.write_text(text)
    print(f"{len(manifest) - bad}/{len(manifest)} ok")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
