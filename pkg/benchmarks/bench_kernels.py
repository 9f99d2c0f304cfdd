"""Compare the compiled and pure-Python mod-p rref kernels, plus a few end-to-end timings.

    python3 benchmarks/bench_kernels.py [--sizes 20,40,80] [--p 5] [--repeat 3]
"""
import argparse
import time

import numpy as np

from exact_lattice.linalg import _pykernels, kernels


def _time(fn, *args, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t)
    return best


def bench_rref(sizes, p, repeat, seed=0):
    rng = np.random.default_rng(seed)
    rows = []
    for n in sizes:
        a = rng.integers(0, p, size=(n, n + n // 2), dtype=np.int64)
        py = _time(_pykernels.rref_modp, a.copy(), p, repeat=repeat)
        cy = _time(kernels.rref_modp, a.copy(), p, repeat=repeat) if kernels.BACKEND == "cython" else None
        rows.append((n, py, cy))
    return rows


def bench_end_to_end():
    from exact_lattice.enomoto import a3_model, classify_by_gldim
    from exact_lattice.quiver import KClosedSetDescr, typeI_ext_table
    out = []
    t = time.perf_counter()
    classify_by_gldim(a3_model())
    out.append(("A3 classification", time.perf_counter() - t))
    t = time.perf_counter()
    typeI_ext_table(KClosedSetDescr.make(5, generic=True), (4, 4), 5)
    out.append(("Kronecker {G} table, dims <= (4,4)", time.perf_counter() - t))
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="20,40,80,160")
    ap.add_argument("--p", type=int, default=5)
    ap.add_argument("--repeat", type=int, default=3)
    a = ap.parse_args()
    sizes = [int(s) for s in a.sizes.split(",")]
    print(f"backend: {kernels.BACKEND}")
    print(f"{'n':>5} {'python [s]':>12} {'cython [s]':>12} {'speedup':>8}")
    for n, py, cy in bench_rref(sizes, a.p, a.repeat):
        sp = f"{py / cy:8.1f}" if cy else "     n/a"
        print(f"{n:>5} {py:12.4f} {(cy if cy else float('nan')):12.4f} {sp}")
    for name, t in bench_end_to_end():
        print(f"{name}: {t:.2f}s")


if __name__ == "__main__":
    main()
