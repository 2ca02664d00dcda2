"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 3]

Both backends are run on the same inputs and their results compared.
"""
from __future__ import annotations

import argparse
import sys
import timeit

import numpy as np

from tideal.combinatorics import Partition
from tideal.decomposition import highest_weight_system
from tideal.kernels import implementations

P = 33554467  # a prime in [2^25, 2^26)


def rank_case(rows: int, cols: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    A = rng.integers(-3, 4, size=(rows, cols), dtype=np.int64)
    A[rows // 2 :] = (A[: rows - rows // 2] * 2) % P  # rank deficiency
    return np.remainder(A, P)


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    impls = implementations()
    if "cython" not in impls:
        print("compiled extension not built; only the fallback is available", file=sys.stderr)

    print(f"{'kernel':<34}{'backend':<10}{'best of ' + str(args.repeat):>14}")
    for rows, cols in ((200, 200), (400, 600)):
        A = rank_case(rows, cols, 1)
        results = {}
        for name, mod in impls.items():
            def run(mod=mod):
                return mod.rank_mod_p(A.copy(), P)
            t = min(timeit.repeat(run, number=1, repeat=args.repeat))
            results[name] = run()
            print(f"{f'rank_mod_p {rows}x{cols}':<34}{name:<10}{t * 1e3:>12.1f}ms")
        assert len(set(results.values())) == 1, results
        for name, mod in impls.items():
            def run(mod=mod):
                return mod.rref_mod_p(A.copy(), P)
            t = min(timeit.repeat(run, number=1, repeat=args.repeat))
            print(f"{f'rref_mod_p {rows}x{cols}':<34}{name:<10}{t * 1e3:>12.1f}ms")

    import tideal.decomposition as dec

    system = highest_weight_system(6, 8, Partition((5, 2, 1)))
    for name, mod in impls.items():
        saved = dec.expand_arrangements
        dec.expand_arrangements = lambda c, l, k, t, mod=mod: mod.expand_arrangements(
            np.asarray(c, dtype=np.int64), np.asarray(l, dtype=np.int64), np.asarray(k, dtype=np.int64), int(t)
        )
        try:
            def run():
                system._cache.clear()
                return sum(int(chunk.sum() % P) for chunk in system.chunks())
            t = min(timeit.repeat(run, number=1, repeat=args.repeat))
        finally:
            dec.expand_arrangements = saved
        print(f"{'rows of W_{6,8} at (5,2,1)':<34}{name:<10}{t * 1e3:>12.1f}ms")
    return 0


if __name__ == "__main__":
    sys.exit(main())
