"""Compare the compiled and pure-Python kernels on fixed workloads.

    python benchmarks/bench_kernels.py [--repeat 3] [--seed 7]

Both backends must agree on every answer; the script exits nonzero if they
do not, or if the extension was not built.
"""
from __future__ import annotations

import argparse
import random
import statistics
import sys
import time

from affsemi import _pykernels
from affsemi.fourier_motzkin import positive_grading

try:
    from affsemi import _kernels
except ImportError:
    _kernels = None


def numerical_queries(rng: random.Random, n: int):
    out = []
    for _ in range(n):
        gens = sorted(rng.sample(range(7, 40), 4))
        x = rng.randrange(50, 400)
        out.append(([(g,) for g in gens], gens, (x,), x))
    return out


def rank3_queries(rng: random.Random, n: int):
    out = []
    while len(out) < n:
        gens = [tuple(rng.randrange(0, 6) for _ in range(3)) for _ in range(5)]
        gens = [g for g in dict.fromkeys(gens) if any(g)]
        ok, lam = positive_grading(gens, 3)
        if not ok or len(gens) < 3:
            continue
        w = [sum(a * b for a, b in zip(lam, g)) for g in gens]
        c = [rng.randrange(0, 6) for _ in gens]
        x = tuple(sum(ci * g[j] for ci, g in zip(c, gens)) for j in range(3))
        # nudge half of the targets off the semigroup
        if rng.random() < 0.5:
            x = (x[0] + 1,) + x[1:]
        out.append((gens, w, x, sum(a * b for a, b in zip(lam, x))))
    return out


def run_search(mod, queries):
    res = []
    for gens, w, x, cap in queries:
        res.append(mod.lex_search(gens, w, x, cap))
    return res


def run_sieve(mod, jobs):
    return [bytes(mod.numerical_sieve(g, lim)) for g, lim in jobs]


def timed(fn, repeat):
    times, out = [], None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times), out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args(argv)
    if _kernels is None:
        print("compiled extension not built; run `pip install -e . --no-build-isolation`", file=sys.stderr)
        return 1
    rng = random.Random(args.seed)
    num = numerical_queries(rng, 300)
    r3 = rank3_queries(rng, 150)
    sieve_jobs = [([rng.randrange(50, 500) for _ in range(5)], 200_000) for _ in range(5)]
    workloads = [
        ("lex_search numerical (300)", lambda m: run_search(m, num)),
        ("lex_search rank 3 (150)", lambda m: run_search(m, r3)),
        ("numerical_sieve 5 x 2e5", lambda m: run_sieve(m, sieve_jobs)),
    ]
    print(f"{'workload':32s} {'python s':>10s} {'cython s':>10s} {'speedup':>8s}")
    bad = False
    for name, fn in workloads:
        tp, outp = timed(lambda: fn(_pykernels), args.repeat)
        tc, outc = timed(lambda: fn(_kernels), args.repeat)
        agree = outp == outc
        bad |= not agree
        print(f"{name:32s} {tp:10.4f} {tc:10.4f} {tp / tc:7.1f}x{'' if agree else '  MISMATCH'}")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
