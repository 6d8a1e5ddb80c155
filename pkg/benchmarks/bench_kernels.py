"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 5]

Each case calls both modules with identical arguments and prints the best
time per call and the python/cython ratio.
"""
import argparse
import cmath
import math
import timeit

from qlab import _pykernels

try:
    from qlab import _ckernels
except ImportError:     # extension not built
    _ckernels = None

TOL, FLOOR, SMALL, MAXT = 1e-15, 1e-300, 3, 10_000

NODES = [math.cos((k + 0.5) * math.pi / 512) for k in range(512)]
WVALS = [1.0 / 512] * 512

CASES = [
    ("hermite_ladder n=40", "hermite_ladder", (0.3 + 0j, 0.4 + 0j, 0.5, 40)),
    ("qexp_sum |ab|=0.2", "qexp_sum", (cmath.exp(1j), 0.5 + 0j, 0.4 + 0j, 0.5, TOL, FLOOR, SMALL, MAXT)),
    ("qexp_sum |ab|=0.8", "qexp_sum", (cmath.exp(1j), 1.0 + 0j, 0.8 + 0j, 0.8, TOL, FLOOR, SMALL, MAXT)),
    ("g_sum n=5", "g_sum", (5, 0.5 + 0j, 0.8, TOL, FLOOR, SMALL, MAXT)),
    ("hyper_sum 3phi2 n=20", "hyper_sum",
     ([0.5 ** -20, 0.3 * cmath.exp(1j), 0.3 * cmath.exp(-1j)], [0j, 0j], 0.5 + 0j, 0.5, 20,
      TOL, FLOOR, SMALL, MAXT)),
    ("hyper_sum 1phi0 z=0.9", "hyper_sum", ([0.3 + 0j], [], 0.9 + 0j, 0.9, -1, TOL, FLOOR, SMALL, MAXT)),
    ("qpoch_infinite q=0.99", "qpoch_infinite", (0.5 + 0j, 0.99, FLOOR, 1, 100_000)),
    ("gram_sums 512x(9x9)", "gram_sums", (NODES, WVALS, 0.4, 0.5, 8)),
]


def best_time(fn, args, repeat):
    timer = timeit.Timer(lambda: fn(*args))
    number, _ = timer.autorange()
    return min(timer.repeat(repeat, number)) / number


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _ckernels is None:
        raise SystemExit("qlab._ckernels is not built; run: python setup.py build_ext --inplace")
    print(f"{'case':<26}{'python':>12}{'cython':>12}{'ratio':>9}")
    for label, name, call in CASES:
        py = best_time(getattr(_pykernels, name), call, args.repeat)
        cy = best_time(getattr(_ckernels, name), call, args.repeat)
        print(f"{label:<26}{py * 1e6:>10.1f}us{cy * 1e6:>10.1f}us{py / cy:>8.1f}x")


if __name__ == "__main__":
    main()
