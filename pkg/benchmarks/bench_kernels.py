"""Compare the compiled and pure-Python kernels.

Times the payoff table, the complex echelon reduction and a full minimax LP
solve with each backend swapped in. Usage::

    python3 benchmarks/bench_kernels.py [--size 6] [--repeat 5]
"""
import argparse
import math
import timeit
from contextlib import contextmanager

import numpy as np

from complexgames import _pykernels, kernels
from complexgames.game import ComplexGame
from complexgames.lp import minimax

try:
    from complexgames import _ckernels
except ImportError:
    _ckernels = None

NAMES = ("simplex_loop", "complex_echelon", "payoff_table", "pivot")


@contextmanager
def use(module):
    saved = {n: getattr(kernels, n) for n in NAMES}
    for n in NAMES:
        setattr(kernels, n, getattr(module, n))
    try:
        yield
    finally:
        for n, f in saved.items():
            setattr(kernels, n, f)


def cases(size, rng):
    A = rng.uniform(-5, 5, (size, size)) + 1j * rng.uniform(-5, 5, (size, size))
    g = ComplexGame(A, math.pi / 4, math.pi / 3)
    D_r, D_c = g.row_polytope.vertex_matrix, g.col_polytope.vertex_matrix
    M = rng.normal(size=(4 * size, 4 * size + 1)) + 1j * rng.normal(size=(4 * size, 4 * size + 1))
    return {
        "payoff_table": lambda: kernels.payoff_table(A, D_r, D_c),
        "complex_echelon": lambda: kernels.complex_echelon(M.copy(), 1e-12),
        "minimax LP": lambda: minimax(ComplexGame(A, math.pi / 4, math.pi / 3)),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=6, help="game is size x size")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if _ckernels is None:
        print("compiled extension not available; build it with: python3 setup.py build_ext --inplace")
        return 1
    work = cases(args.size, np.random.default_rng(0))
    print(f"{'kernel':<18}{'python ms':>12}{'cython ms':>12}{'speedup':>10}")
    for name, fn in work.items():
        times = {}
        for label, mod in (("python", _pykernels), ("cython", _ckernels)):
            with use(mod):
                number = max(1, int(0.2 / max(timeit.timeit(fn, number=1), 1e-6)))
                best = min(timeit.repeat(fn, number=number, repeat=args.repeat)) / number
            times[label] = best * 1e3
        print(f"{name:<18}{times['python']:>12.3f}{times['cython']:>12.3f}"
              f"{times['python'] / times['cython']:>9.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
