"""Compare the compiled table kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Each row times one kernel on realistic inputs (flattened meadow tables, ring
canonical forms) with both backends and prints the speedup.
"""

import argparse
import statistics
import time

import numpy as np

from meadowenum import kernels
from meadowenum.build import build_meadow, enumerate_premeadows, with_unique_homs
from meadowenum.lattices import enumerate_lattices, lattice_from_covers
from meadowenum.ring_enum import _brute_force
from meadowenum.rings import cyclic_ring, zero_ring


def cube_meadow():
    L = lattice_from_covers(8, [(7, 1), (7, 2), (7, 3), (1, 4), (1, 5), (2, 4), (2, 6),
                                (3, 5), (3, 6), (4, 0), (5, 0), (6, 0)])
    z9 = cyclic_ring(9)
    return build_meadow(with_unique_homs(L, [zero_ring() if v == 0 else z9 for v in range(8)]))


def workloads():
    big = cube_meadow()  # 64 elements
    small = [build_meadow(d) for d in enumerate_premeadows(9)]
    leqs = [np.ascontiguousarray(L.leq, dtype=np.uint8) for L in enumerate_lattices(7)]
    rng = np.random.default_rng(0)
    table = np.ascontiguousarray(cyclic_ring(8).mul, dtype=np.intc)
    perms = np.array([rng.permutation(8) for _ in range(256)], dtype=np.intc)
    inverses = np.argsort(perms, axis=1).astype(np.intc)
    return {
        "assoc, 64-element meadow": lambda: kernels.first_nonassoc(big.mul),
        "distrib, 64-element meadow": lambda: kernels.first_nondistrib(big.add, big.mul),
        "assoc, all order-9 meadows": lambda: [kernels.first_nonassoc(M.add) for M in small],
        "meet from order, 53 lattices": lambda: [kernels.meet_from_leq(x) for x in leqs],
        "min relabeling, 256 perms": lambda: kernels.min_relabeled(table, perms, inverses),
        "order-8 ring brute force": lambda: (_brute_force.cache_clear(), _brute_force(8)),
    }


def timeit(fn, repeat):
    runs = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        runs.append(time.perf_counter() - t)
    return statistics.median(runs)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    try:
        kernels.use_backend("cython")
    except ImportError:
        print("compiled kernels are not built; run `pip install -e . --no-build-isolation`")
        return 1
    jobs = workloads()
    print(f"{'workload':32} {'cython':>10} {'python':>10} {'speedup':>8}")
    for name, fn in jobs.items():
        reps = 1 if "brute force" in name else args.repeat
        kernels.use_backend("cython")
        fast = timeit(fn, reps)
        kernels.use_backend("python")
        slow = timeit(fn, reps)
        print(f"{name:32} {fast * 1e3:9.2f}ms {slow * 1e3:9.2f}ms {slow / fast:7.1f}x")
    kernels.use_backend("cython")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
