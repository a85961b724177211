#!/usr/bin/env python3
"""Time the compiled GF(q) kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeats 3] [--cases 2x2:3,chain3:3]

Each kernel is run on identical inputs in both backends; results are checked
for equality before the timings are printed.
"""

import argparse
import sys
import time

import numpy as np

from incmon import kernels
from incmon.exact import inverse_upper
from incmon.incidence import full_incidence, maximal_antichain_monoid
from incmon.poset import chain


def context(name):
    if name.startswith("chain"):
        return full_incidence(chain(int(name[5:])))
    k, m = name.split("x")
    return maximal_antichain_monoid(int(k), int(m))


def best_of(fn, repeats):
    times, out = [], None
    for _ in range(repeats):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def bench_case(name, q, repeats, sample):
    ctx = context(name)
    codec = kernels.GFCodec(ctx, q)
    rng = np.random.default_rng(0)
    codes = rng.choice(codec.total, size=min(sample, codec.total), replace=False)
    mats = codec.decode(codes)
    units = np.array([m for m in codec.decode(np.arange(min(codec.total, 20000))) if np.all(np.diag(m) != 0)])
    invs = np.array([codec.from_matrix(inverse_upper(codec.to_matrix(u))) for u in units])
    jobs = {
        "idempotent_codes": lambda mod: mod.idempotent_codes(codec.total, q, codec.n, codec.rows, codec.cols, codec.base),
        "products": lambda mod: mod.products(mats, mats, q, codec.rows, codec.cols),
        "conjugates": lambda mod: mod.conjugates(units, invs, mats[0], q, codec.rows, codec.cols),
    }
    mods = [kernels.backend("python")]
    try:
        mods.append(kernels.backend("cython"))
    except ImportError:
        print("compiled backend not built; timing the fallback only", file=sys.stderr)
    rows = []
    for job, fn in jobs.items():
        results = [best_of(lambda: fn(mod), repeats) for mod in mods]
        for (_, out) in results[1:]:
            if not np.array_equal(out, results[0][1]):
                raise SystemExit(f"{job}: backends disagree on {name} over GF({q})")
        rows.append((f"{name}/GF({q})", job, [t for t, _ in results]))
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--cases", default="2x2:3,2x2:5,3x2:3,chain4:3,3x3:2", help="comma-separated CONTEXT:q")
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--sample", type=int, default=600, help="operands for the products kernel")
    args = ap.parse_args(argv)

    print(f"{'case':<14} {'kernel':<18} {'python (s)':>11} {'cython (s)':>11} {'speedup':>8}")
    for case in args.cases.split(","):
        name, q = case.split(":")
        for label, job, times in bench_case(name, int(q), args.repeats, args.sample):
            py = times[0]
            cy = times[1] if len(times) > 1 else float("nan")
            print(f"{label:<14} {job:<18} {py:>11.4f} {cy:>11.4f} {py / cy:>7.1f}x")


if __name__ == "__main__":
    main()
