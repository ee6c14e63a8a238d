"""Compare the compiled cpre kernel with the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat N] [--sizes 16,32,64]

Random relations of shape (n_env*n_sys, n_env, n_sys) are fed to both
kernels; the lift fixture is then solved end to end under each backend.
"""

import argparse
import time
from pathlib import Path

import numpy as np

from gr1cores import _backend, _cpre_py, punch_qc, parse_spec, reduce

SPECS = Path(__file__).resolve().parent.parent / "specs"


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def bench_random(kernels, sizes, repeat, density):
    rng = np.random.default_rng(0)
    print(f"{'n_env x n_sys':>14} " + " ".join(f"{k:>12}" for k in kernels) + "   speedup")
    for n in sizes:
        rows = n * n
        rho_e = rng.random((rows, n)) < density
        rho_s = rng.random((rows, n, n)) < density
        target = rng.random(rows) < 0.5
        ref = None
        cols = []
        for name, fn in kernels.items():
            out = np.asarray(fn(rho_e, rho_s, target))
            if ref is None:
                ref = out
            assert (out == ref).all(), f"{name} disagrees"
            cols.append(best_of(lambda: fn(rho_e, rho_s, target), repeat))
        speed = cols[-1] / cols[0] if len(cols) > 1 else 1.0
        print(f"{f'{n} x {n}':>14} " + " ".join(f"{c * 1e3:>10.2f}ms" for c in cols)
              + f"   {speed:6.1f}x")


def bench_lift(kernels, repeat):
    problem = reduce(parse_spec((SPECS / "lift.spc").read_text()))
    for name, fn in kernels.items():
        _backend.cpre = fn
        t = best_of(lambda: punch_qc(problem), repeat)
        print(f"lift all-cores (punch-qc) with {name:>6}: {t * 1e3:8.2f}ms")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--sizes", default="8,16,32,48")
    ap.add_argument("--density", type=float, default=0.9,
                    help="probability that a transition is allowed")
    args = ap.parse_args()

    kernels = {}
    compiled = _backend.compiled_kernel()
    if compiled is None:
        print("compiled kernel not built; timing the numpy kernel only")
    else:
        kernels["cython"] = compiled
    kernels["numpy"] = _cpre_py.cpre

    sizes = [int(s) for s in args.sizes.split(",")]
    bench_random(kernels, sizes, args.repeat, args.density)
    print()
    bench_lift(kernels, args.repeat)


if __name__ == "__main__":
    main()
