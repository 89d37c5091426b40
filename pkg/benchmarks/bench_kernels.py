"""Compare the compiled and numpy kernel backends.

    python benchmarks/bench_kernels.py [--repeat 5]

Times each kernel on representative inputs, plus a full resampling
construction with the backend swapped in.
"""

import argparse
import timeit

import numpy as np

from covarray import kernels
from covarray.bounds import CoveringParams
from covarray.construct import construct
from covarray.model import sample_array, sample_tiles
from covarray.verify import row_combinations


def cases():
    rng = np.random.default_rng(0)
    verify_mat = sample_array(CoveringParams(30, 3, 3), 300, 1, seed=0).entries
    verify_combos = row_combinations(30, 3)
    small_mat = sample_array(CoveringParams(8, 3, 2), 40, 1, seed=0).entries
    small_combos = row_combinations(8, 3)
    stacks = sample_tiles(3 * 100_000, 3, 2, rng).reshape(100_000, 3, 6)
    target = np.ones(3, dtype=np.uint8)
    return {
        "witness_counts  m=30 t=3 a=3 n=303": lambda b: kernels.witness_counts(verify_mat, verify_combos, 3, backend=b),
        "first_witness   m=30 t=3 a=3 n=303": lambda b: kernels.first_witness(verify_mat, verify_combos, 3, backend=b),
        "witness_counts  m=8 t=3 a=2 n=42  ": lambda b: kernels.witness_counts(small_mat, small_combos, 2, backend=b),
        "stack_hits      1e5 stacks 3x6    ": lambda b: kernels.stack_hits(stacks, target, backend=b),
    }


def run_construct(backend):
    saved = kernels._impl
    kernels._impl = kernels.BACKENDS[backend]
    try:
        construct(CoveringParams(20, 3, 2), 1, n=40, seed=1, max_resamples=10**6)
    finally:
        kernels._impl = saved


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    backends = sorted(kernels.BACKENDS)
    print(f"default backend: {kernels.BACKEND}; comparing {backends}")
    header = f"{'case':<38}" + "".join(f"{b:>12}" for b in backends)
    if "cython" in backends:
        header += f"{'speedup':>10}"
    print(header)
    jobs = dict(cases())
    jobs["construct       m=20 t=3 a=2 n=40  "] = run_construct
    for name, fn in jobs.items():
        times = {b: min(timeit.repeat(lambda: fn(b), number=1, repeat=args.repeat)) for b in backends}
        line = f"{name:<38}" + "".join(f"{times[b] * 1e3:>10.2f}ms" for b in backends)
        if "cython" in times:
            line += f"{times['python'] / times['cython']:>9.1f}x"
        print(line)


if __name__ == "__main__":
    main()
