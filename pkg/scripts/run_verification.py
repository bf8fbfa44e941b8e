#!/usr/bin/env python3
"""Run the full property fuzzer across dimensions and write one JSON report.

Usage:
    python scripts/run_verification.py [--trials 20] [--seed 7] [--out report.json]

Exit status 0 iff every property passes at its documented tolerance.
"""

import argparse
import json
import sys
import time

from siegel_jacobi.verify import fuzz_all


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--k", type=float, default=4.0)
    ap.add_argument("--mu", type=float, default=1.0)
    ap.add_argument("--dims", type=int, nargs="+", default=[1, 2])
    ap.add_argument("--out", default=None)
    args = ap.parse_args()

    all_pass = True
    reports = {}
    for n in args.dims:
        t0 = time.time()
        rep = fuzz_all(
            n=n, k=args.k, mu=args.mu, trials=args.trials, master_seed=args.seed
        )
        reports[f"n={n}"] = rep.to_json()
        all_pass &= rep.passed
        worst = max(rep.results, key=lambda r: r.max_error / max(r.tol, 1e-300))
        print(
            f"n={n}: {'PASS' if rep.passed else 'FAIL'} "
            f"({len(rep.results)} properties, {time.time() - t0:.1f}s; "
            f"tightest: {worst.property} at {worst.max_error:.2e} vs tol {worst.tol:.0e})"
        )

    text = json.dumps(reports, indent=2, sort_keys=True)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
        print(f"report written to {args.out}")
    else:
        print(text)
    return 0 if all_pass else 1


if __name__ == "__main__":
    sys.exit(main())
