#!/usr/bin/env python3
"""Compare the compiled and pure term kernels on real workloads.

Usage: python benchmarks/bench_kernel.py [--repeat 3]

Workloads:
  * dense-product: products of random 6-variable polynomials;
  * universal-polys: a cold-cache build of P_1..P_6 and all P_{m,n}
    with mn <= 6;
  * symbolic-witt: the symbolic Witt sum/product plus exponential-map
    ring-homomorphism identities over Q[a_1..a_4, b_1..b_4].
"""

import argparse
import random
import time

from wittlam import kernel
from wittlam.ground import GroundRing
from wittlam.lambda_witt import (WittVec, exp_iso, lambda_add, lambda_mul,
                                 witt_add, witt_mul)
from wittlam.sympoly import MPoly, UniversalPolyCache, universal_P, \
    universal_Pcomp


def random_terms(rng, nvars, nterms):
    out = {}
    for _ in range(nterms):
        e = tuple(rng.randint(0, 5) for _ in range(nvars))
        c = rng.randint(-99, 99)
        if c:
            out[e] = c
    return out


def work_dense_product():
    rng = random.Random(0)
    polys = [random_terms(rng, 6, 400) for _ in range(8)]
    for a in polys:
        for b in polys:
            kernel.mul(a, b)


def work_universal_polys():
    cache = UniversalPolyCache()
    for n in range(1, 7):
        universal_P(n, cache=cache)
    for m in range(1, 7):
        for n in range(1, 6 // m + 1):
            universal_Pcomp(m, n, cache=cache)


def work_symbolic_witt():
    names = tuple(f"a{i}" for i in range(1, 5)) + tuple(
        f"b{i}" for i in range(1, 5)
    )
    ring = GroundRing.rational_poly(names)
    gens = [ring.element(MPoly.gen(names, v)) for v in names]
    a = WittVec(ring, gens[:4], 4)
    b = WittVec(ring, gens[4:], 4)
    s = witt_add(a, b)
    p = witt_mul(a, b)
    assert exp_iso(s) == lambda_add(exp_iso(a), exp_iso(b))
    assert exp_iso(p) == lambda_mul(exp_iso(a), exp_iso(b))


WORKLOADS = [
    ("dense-product", work_dense_product),
    ("universal-polys", work_universal_polys),
    ("symbolic-witt", work_symbolic_witt),
]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    impls = kernel.available()
    if "compiled" not in impls:
        print("note: compiled kernel not built; timing the pure kernel only")

    print(f"{'workload':<18}" + "".join(f"{name:>12}" for name in impls)
          + f"{'speedup':>10}")
    for name, work in WORKLOADS:
        times = {}
        for impl in impls:
            kernel.use(impl)
            best = min(
                _timed(work) for _ in range(args.repeat)
            )
            times[impl] = best
        row = f"{name:<18}" + "".join(f"{times[i]:>11.3f}s" for i in impls)
        if "compiled" in times and times["compiled"] > 0:
            row += f"{times['pure'] / times['compiled']:>9.1f}x"
        print(row)
    kernel.use("auto")


def _timed(work):
    t0 = time.perf_counter()
    work()
    return time.perf_counter() - t0


if __name__ == "__main__":
    main()
