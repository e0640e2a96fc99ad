"""Compare the numpy and numba kernel backends.

Run with ``python benchmarks/bench_kernels.py [--repeat R]``.  Each kernel is
warmed up once (which triggers JIT compilation) and then timed on the same
inputs under both backends; outputs are checked for equality before timing.
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from topohopf import _kernels as K
from topohopf import qposet as qp


def _inputs():
    rng = np.random.default_rng(0)
    rel = [rng.random((n, n)) < 0.25 for n in (6, 10, 16) for _ in range(8)]
    tops = qp.all_topologies(range(1, 5))
    posets = [T.leq for T in tops[::7]]
    relabel = []
    for T in tops[::11]:
        n = len(T)
        cls = np.zeros(n, dtype=np.int64)
        relabel.append((T.leq, cls, cls))
    return {
        "closure": [(m,) for m in rel],
        "upset_masks": [(m,) for m in posets],
        "min_relabeling": relabel,
        "quasi_orders": [(3,), (4,), (5,)],
    }


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if "numba" not in K.BACKENDS:
        print("numba unavailable; nothing to compare")
        return 0
    inputs = _inputs()
    print(f"{'kernel':<16}{'numpy ms':>12}{'numba ms':>12}{'speedup':>10}")
    for name, cases in inputs.items():
        times = {}
        for backend in ("numpy", "numba"):
            fn = K.BACKENDS[backend][name]
            for c in cases:  # warm-up and compile
                fn(*c)
            times[backend] = min(
                timeit.repeat(lambda: [fn(*c) for c in cases], number=1, repeat=args.repeat)
            )
        for c in cases:
            a, b = K.BACKENDS["numpy"][name](*c), K.BACKENDS["numba"][name](*c)
            assert np.array_equal(np.asarray(a), np.asarray(b)), name
        np_ms, nb_ms = 1e3 * times["numpy"], 1e3 * times["numba"]
        print(f"{name:<16}{np_ms:>12.3f}{nb_ms:>12.3f}{np_ms / nb_ms:>9.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
