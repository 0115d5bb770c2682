"""Timing comparison of the jitted kernels against their numpy fallbacks.

Usage:
    python benchmarks/bench_kernels.py [--n 9] [--p 499] [--repeat 3]

The same batches run through both implementations; outputs are asserted
identical before timings are reported.  With CELLFORM_NO_NUMBA=1 only the
fallback column is populated.
"""
from __future__ import annotations

import argparse
import itertools
import time

import numpy as np

from cellform import kernels


def _time(fn, *args, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def bench_convergence(n: int, repeat: int):
    rows = list(itertools.islice(itertools.permutations(range(2, n + 1)), 500_000))
    batch = np.empty((len(rows), n), dtype=np.int64)
    batch[:, 0] = 1
    batch[:, 1:] = rows
    results = {}
    numpy_out = kernels._convergent_mask_np(batch)
    results["numpy"] = _time(kernels._convergent_mask_np, batch, repeat=repeat)
    if kernels.USE_NUMBA:
        jit_out = kernels._convergent_mask_jit(batch)  # warm the compile cache
        assert np.array_equal(jit_out, numpy_out)
        results["numba"] = _time(kernels._convergent_mask_jit, batch, repeat=repeat)
    return batch.shape[0], results, batch[numpy_out]


def bench_canonical(survivors: np.ndarray, repeat: int):
    maps = kernels._dihedral_maps(survivors.shape[1])
    results = {}
    numpy_out = kernels._canonical_keys_np(survivors, maps)
    results["numpy"] = _time(kernels._canonical_keys_np, survivors, maps, repeat=repeat)
    if kernels.USE_NUMBA:
        jit_out = kernels._canonical_keys_jit(survivors, maps)
        assert np.array_equal(jit_out, numpy_out)
        results["numba"] = _time(kernels._canonical_keys_jit, survivors, maps, repeat=repeat)
    return survivors.shape[0], results


def bench_legendre(p: int, repeat: int):
    results = {}
    numpy_out = kernels._legendre_traces_np(p)
    results["numpy"] = _time(kernels._legendre_traces_np, p, repeat=repeat)
    if kernels.USE_NUMBA:
        jit_out = kernels._legendre_traces_jit(p)
        assert np.array_equal(jit_out, numpy_out)
        results["numba"] = _time(kernels._legendre_traces_jit, p, repeat=repeat)
    return results


def _report(label: str, size, results: dict):
    cols = "  ".join(f"{name}: {secs * 1000:9.2f} ms" for name, secs in results.items())
    speedup = ""
    if "numba" in results and results["numba"] > 0:
        speedup = f"  (numpy/numba = {results['numpy'] / results['numba']:.1f}x)"
    print(f"{label:<26} size={size:<9} {cols}{speedup}")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=9, help="permutation size for the scan benches")
    parser.add_argument("--p", type=int, default=499, help="prime for the point-count bench")
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    print(f"numba available and enabled: {kernels.USE_NUMBA}")
    n_rows, conv_results, survivors = bench_convergence(args.n, args.repeat)
    _report(f"convergence scan (N={args.n})", n_rows, conv_results)
    n_surv, canon_results = bench_canonical(survivors, args.repeat)
    _report(f"canonical keys (N={args.n})", n_surv, canon_results)
    leg_results = bench_legendre(args.p, args.repeat)
    _report(f"legendre traces (p={args.p})", args.p - 2, leg_results)


if __name__ == "__main__":
    main()
