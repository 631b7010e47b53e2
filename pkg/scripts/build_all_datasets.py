"""Emit every figure dataset preset into an output directory.

Each dataset goes through the real CLI entry point, so the files match
byte for byte what the documented commands produce.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from ramsq.cli import main as ramsq_main

PRESETS = [
    ("coeffs_reference.csv", ["coeffs", "--L-over-l", "10", "--L-over-La", "2.5"]),
    ("fig2_a.csv", ["fig2", "--panel", "a"]),
    ("fig2_b.csv", ["fig2", "--panel", "b"]),
    ("fig3_a.csv", ["fig3", "--panel", "a"]),
    ("fig3_b.csv", ["fig3", "--panel", "b"]),
    ("fig3_c.csv", ["fig3", "--panel", "c"]),
    ("fig3_d.csv", ["fig3", "--panel", "d"]),
    ("fig4_a.csv", ["fig4", "--panel", "a"]),
    ("fig4_b.csv", ["fig4", "--panel", "b"]),
    ("figxr_a.csv", ["figxr", "--panel", "a"]),
    ("figxr_b.csv", ["figxr", "--panel", "b"]),
    ("snl_region.csv", ["snl-region"]),
]


def main() -> int:
    ap = argparse.ArgumentParser(description="Build all preset CSV datasets")
    ap.add_argument("--out-dir", default="datasets")
    args = ap.parse_args()

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for name, argv in PRESETS:
        path = out / name
        code = ramsq_main(argv + ["--out", str(path)])
        if code != 0:
            print(f"[build] FAILED ({code}): {' '.join(argv)}", file=sys.stderr)
            return code
        print(f"[build] {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
