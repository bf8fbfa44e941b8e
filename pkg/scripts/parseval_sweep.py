#!/usr/bin/env python3
"""Sweep the weight k and report the quadrature norm of the constant
function in the n = 1 weighted Bergman space.  The expected value is 1 for
every integrable weight; deviations measure the normalization constant, not
the quadrature (which is resolved to ~1e-14 away from the k = 3 threshold).

Usage:
    python scripts/parseval_sweep.py [--mu 1.0] [--kmin 4] [--kmax 12] [--steps 9]
"""

import argparse

from siegel_jacobi.errors import GeometryError
from siegel_jacobi.kernels import parseval_check_n1


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--mu", type=float, default=1.0)
    ap.add_argument("--kmin", type=float, default=4.0)
    ap.add_argument("--kmax", type=float, default=12.0)
    ap.add_argument("--steps", type=int, default=9)
    args = ap.parse_args()

    print(f"{'k':>8}  {'norm':>22}  {'|norm - 1|':>12}")
    for i in range(args.steps):
        k = args.kmin + i * (args.kmax - args.kmin) / max(args.steps - 1, 1)
        try:
            val = parseval_check_n1(k, args.mu)
            print(f"{k:8.3f}  {val:22.16f}  {abs(val - 1):12.3e}")
        except GeometryError as exc:
            print(f"{k:8.3f}  {type(exc).__name__}: {exc}")


if __name__ == "__main__":
    main()
