"""Time the Cohen quadrature on both kernel backends.

Each backend is imported in a fresh interpreter (the backend is fixed at import
time by ``BJQUANT_DISABLE_NUMBA``), warmed up once, then timed by median.

    python3 benchmarks/bench_quadrature.py --sizes 64 128 256 --repeats 5
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, statistics, sys, time
import numpy as np
from bjquant.numeric import BACKEND, Grid, PhaseSamples, quantize_apply, quantize_apply_fast
from bjquant.numeric.io import hermite_function

sizes, repeats, naive_cap = json.loads(sys.argv[1])
rows = []
for N in sizes:
    g = Grid.balanced(N)
    H = PhaseSamples.from_function(g, lambda Q, P: np.exp(-(Q**2 + P**2) / 2))
    psi = hermite_function(g, 1)
    row = {"backend": BACKEND, "N": N}
    for name, fn in (("naive", quantize_apply), ("fast", quantize_apply_fast)):
        if name == "naive" and N > naive_cap:
            row[name] = None
            continue
        fn(H, psi)
        times = []
        for _ in range(repeats):
            t0 = time.perf_counter()
            fn(H, psi)
            times.append(time.perf_counter() - t0)
        row[name] = statistics.median(times)
    rows.append(row)
print(json.dumps(rows))
"""


def run_backend(disable_numba: bool, sizes, repeats, naive_cap):
    env = dict(os.environ)
    env["BJQUANT_DISABLE_NUMBA"] = "1" if disable_numba else "0"
    out = subprocess.run(
        [sys.executable, "-c", WORKER, json.dumps([sizes, repeats, naive_cap])],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    return json.loads(out.stdout.strip().splitlines()[-1])


def fmt(t):
    return "      -" if t is None else f"{t * 1e3:8.2f}"


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[64, 128, 256, 512])
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--naive-cap", type=int, default=512, help="skip the O(N^3) path above this N")
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)

    rows = run_backend(False, args.sizes, args.repeats, args.naive_cap)
    rows += run_backend(True, args.sizes, args.repeats, args.naive_cap)
    if args.json:
        print(json.dumps(rows, indent=2))
        return 0
    print(f"{'backend':<8} {'N':>5} {'naive ms':>9} {'fast ms':>9} {'speedup':>8}")
    for r in rows:
        speed = f"{r['naive'] / r['fast']:7.1f}x" if r["naive"] else "       -"
        print(f"{r['backend']:<8} {r['N']:>5} {fmt(r['naive']):>9} {fmt(r['fast']):>9} {speed:>8}")
    by = {(r["backend"], r["N"]): r for r in rows}
    for N in args.sizes:
        a, b = by.get(("numba", N)), by.get(("numpy", N))
        if a and b and a["naive"] and b["naive"]:
            print(f"N={N}: numba naive is {b['naive'] / a['naive']:.1f}x the numpy naive speed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
