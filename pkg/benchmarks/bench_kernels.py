"""Compiled vs pure-Python determinant kernels.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Each row times one kernel call on both backends (best of ``--repeat``) and
checks the results are identical.
"""

import argparse
import sys
import timeit

from resheight import kernels

CASES = [
    ("band_minor", (3, 30, (0, 1, 32))),
    ("band_minor", (4, 24, (0, 5, 11, 27))),
    ("laplace_expand", (2, 30)),
    ("laplace_expand", (3, 16)),
    ("laplace_expand", (3, 24)),
    ("laplace_expand", (4, 12)),
]


def best_time(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if kernels.BACKEND != "cython":
        print("compiled kernels not built; run `python3 setup.py build_ext --inplace` first", file=sys.stderr)
        return 1

    print(f"{'kernel':<16}{'args':<22}{'cython s':>10}{'python s':>10}{'speedup':>9}  same")
    for name, a in CASES:
        fn = getattr(kernels, name)
        ext = fn(*a, backend="cython")
        py = fn(*a, backend="python")
        tc = best_time(lambda: fn(*a, backend="cython"), args.repeat)
        tp = best_time(lambda: fn(*a, backend="python"), args.repeat)
        print(f"{name:<16}{str(a):<22}{tc:>10.4f}{tp:>10.4f}{tp / tc:>8.1f}x  {ext == py}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
