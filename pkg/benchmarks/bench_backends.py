"""Compare the accelerated and pure-numpy kernel backends.

Usage:
    python3 benchmarks/bench_backends.py [--quick]

Three workloads:
  * class-count sweep: form enumeration over a range of discriminants
  * character-sum sweep: Dirichlet class-number sums over the same range
  * classifier pipeline: random conjugation + decompose + split round trips

Each workload runs on both backends (warmup first, so numba compilation is
excluded) and reports wall time and speedup.
"""

import argparse
import time

import numpy as np

from superspecial import (
    canonical_module,
    decompose,
    get_backend,
    random_conjugate,
    set_backend,
    split,
)
from superspecial import kernels


def _admissible_discs(lo, hi):
    out = [d for d in range(-hi, -lo) if d % 4 in (0, 1)]
    return np.array(out, dtype=np.int64)


def work_class_count(discs):
    return int(kernels.class_count_batch(discs).sum())


def work_dirichlet(discs):
    return int(kernels.dirichlet_sum_batch(discs).sum())


def work_classifier(rounds):
    total = 0
    for seed in range(rounds):
        for base in (canonical_module(11, 8, 2, 2),
                     canonical_module(23, 8, 1, 2, 2)):
            m = random_conjugate(base, seed)
            inv = decompose(m)
            split(m)
            total += inv.n
    return total


def run(label, fn, args):
    results = {}
    for backend in ("numba", "numpy"):
        prev = set_backend(backend)
        try:
            fn(*args)  # warmup (includes jit compilation on numba)
            t0 = time.perf_counter()
            value = fn(*args)
            results[backend] = (time.perf_counter() - t0, value)
        finally:
            set_backend(prev)
    (t_nb, v_nb), (t_np, v_np) = results["numba"], results["numpy"]
    if v_nb != v_np:
        raise SystemExit(f"{label}: backend disagreement {v_nb} != {v_np}")
    speedup = t_np / t_nb if t_nb > 0 else float("inf")
    print(f"{label:<24} numba {t_nb * 1000:9.1f} ms   "
          f"numpy {t_np * 1000:9.1f} ms   speedup x{speedup:.1f}")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--quick", action="store_true",
                        help="smaller workloads (CI-sized)")
    ns = parser.parse_args()

    hi = 20000 if ns.quick else 80000
    rounds = 40 if ns.quick else 200
    discs = _admissible_discs(3, hi)
    # character sums cost O(|D|) each, so sweep a quarter of the range
    discs_small = _admissible_discs(3, hi // 4)
    print(f"default backend: {get_backend()}")
    print(f"discriminant range: |D| < {hi} ({len(discs)} values); "
          f"classifier rounds: {rounds}\n")
    run("class-count sweep", work_class_count, (discs,))
    run("character-sum sweep", work_dirichlet, (discs_small,))
    run("classifier pipeline", work_classifier, (rounds,))


if __name__ == "__main__":
    main()
