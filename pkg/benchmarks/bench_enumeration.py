#!/usr/bin/env python3
"""Benchmark the enumeration kernel: numba JIT vs the pure-Python fallback.

Each mode runs in a fresh interpreter so that the BIQUAD_HNP_PURE_PYTHON
flag is honored at import time.  The JIT timing excludes compilation
(first call warms the cache, the reported figure is the best of the
remaining repeats).

Usage:
    python benchmarks/bench_enumeration.py [--max-disc 1e8] [--repeats 3]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
from biquad_hnp import enumeration
from biquad_hnp._kernels import USING_NUMBA

x = int(sys.argv[1])
repeats = int(sys.argv[2])
enumeration.enumerate_fields(min(x, 10**4))  # warm: jit compile / import cost
times = []
for _ in range(repeats):
    t0 = time.perf_counter()
    report = enumeration.enumerate_fields(x)
    times.append(time.perf_counter() - t0)
print(json.dumps({
    "numba": USING_NUMBA,
    "best_s": min(times),
    "S": report.S,
    "S_tilde": report.S_tilde,
}))
"""


def run_mode(pure_python: bool, max_disc: int, repeats: int) -> dict:
    env = dict(os.environ)
    env["BIQUAD_HNP_PURE_PYTHON"] = "1" if pure_python else "0"
    out = subprocess.run(
        [sys.executable, "-c", WORKER, str(max_disc), str(repeats)],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    return json.loads(out.stdout.strip().splitlines()[-1])


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-disc", default="1e8")
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()
    max_disc = int(float(args.max_disc))

    jit = run_mode(False, max_disc, args.repeats)
    pure = run_mode(True, max_disc, args.repeats)

    if not jit["numba"]:
        print("warning: numba unavailable, both runs used the fallback")
    if (jit["S"], jit["S_tilde"]) != (pure["S"], pure["S_tilde"]):
        print("ERROR: paths disagree:", jit, pure)
        return 1

    print(f"max disc           {max_disc:.3e}   (S = {jit['S']}, failing = {jit['S_tilde']})")
    print(f"numba JIT          {jit['best_s']:.3f} s")
    print(f"pure Python        {pure['best_s']:.3f} s")
    print(f"speedup            {pure['best_s'] / jit['best_s']:.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
