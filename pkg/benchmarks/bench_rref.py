"""Compare the compiled and pure-Python rref mod p kernels.

    python3 benchmarks/bench_rref.py [--sizes 20 60 120] [--primes 2 101] [--repeat 5]

Each row times both kernels on the same random matrices and checks that
they agree on the reduced form and the pivot columns.
"""
from __future__ import annotations

import argparse
import sys
import timeit

import numpy as np

from siltloc import _kernels


def _compiled():
    try:
        from siltloc._rref import rref_modp
    except ImportError:
        return None
    return rref_modp


def bench(sizes, primes, repeat, seed):
    fast = _compiled()
    slow = _kernels.rref_modp_python
    rng = np.random.default_rng(seed)
    rows = []
    for p in primes:
        for n in sizes:
            m = rng.integers(0, p, size=(n, n + n // 2), dtype=np.int64)
            a, b = m.copy(), m.copy()
            pa = slow(a, p)
            t_py = min(timeit.repeat(lambda: slow(m.copy(), p), number=1, repeat=repeat))
            if fast is None:
                rows.append((p, n, len(pa), t_py, None, None))
                continue
            pb = fast(b, p)
            if pa != pb or not np.array_equal(a, b):
                raise AssertionError(f"kernels disagree at p={p}, n={n}")
            t_cy = min(timeit.repeat(lambda: fast(m.copy(), p), number=1, repeat=repeat))
            rows.append((p, n, len(pa), t_py, t_cy, t_py / t_cy))
    return rows


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[20, 60, 120, 240])
    ap.add_argument("--primes", type=int, nargs="+", default=[2, 5, 101])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args(argv)
    rows = bench(args.sizes, args.primes, args.repeat, args.seed)
    print(f"default backend: {_kernels.BACKEND}")
    print(f"{'p':>5} {'rows':>5} {'rank':>5} {'python ms':>10} {'cython ms':>10} {'speedup':>8}")
    for p, n, rank, t_py, t_cy, sp in rows:
        cy = f"{t_cy * 1e3:10.3f}" if t_cy is not None else f"{'n/a':>10}"
        ratio = f"{sp:8.1f}" if sp is not None else f"{'n/a':>8}"
        print(f"{p:>5} {n:>5} {rank:>5} {t_py * 1e3:10.3f} {cy} {ratio}")
    if rows and rows[0][4] is None:
        print("compiled kernel not built; only the Python timings are shown", file=sys.stderr)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
