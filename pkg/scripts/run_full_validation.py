"""Oracle run at full strength: K = 10^5 draws, seed 42, both samplers.

Writes the JSON report, prints one line per check with its worst
sigma margin, and exits nonzero if any check fails.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from ramsq.validation import run_validation


def main() -> int:
    ap = argparse.ArgumentParser(description="Run the Monte Carlo oracle suite")
    ap.add_argument("--realizations", type=int, default=100_000)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--sampler", choices=("mean", "exponential", "both"), default="both")
    ap.add_argument("--out", default="validation_report.json")
    args = ap.parse_args()

    t0 = time.perf_counter()
    report = run_validation(
        seed=args.seed, realizations=args.realizations, sampler=args.sampler
    )
    wall = time.perf_counter() - t0

    with open(args.out, "w") as fh:
        json.dump(report.as_dict(), fh, indent=2, sort_keys=True)
        fh.write("\n")

    for check in report.checks:
        margin = check.detail.get("worst_sigma_margin")
        extra = f"  worst {margin:.3f} sigma" if margin is not None else ""
        print(f"[validate] {check.name}: {check.status}{extra}")
    print(f"[validate] status={report.status} wall={wall:.1f}s -> {args.out}")
    return 0 if report.status != "fail" else 1


if __name__ == "__main__":
    sys.exit(main())
