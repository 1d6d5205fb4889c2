"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 5]

Prints one row per kernel: best wall time for each backend and the ratio.
"""

from __future__ import annotations

import argparse
import timeit

from hclass import _kernels_py

try:
    from hclass import _kernels
except ImportError:  # extension not built
    _kernels = None

CASES = [
    ("kloosterman_brute", (3, 1, -5, 4 * 997)),
    ("unit_kloosterman_brute", (2, 3, 9973)),
    ("lattice_sum_F0", (3, 2, 0.1, 0.6, 1500)),
    ("sqrt_count_scan", (20_000, 13)),
]


def best(fn, args, repeat: int) -> float:
    return min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat))


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    opts = ap.parse_args()
    print(f"{'kernel':<24}{'numpy [ms]':>12}{'cython [ms]':>13}{'speedup':>9}")
    for name, args in CASES:
        t_py = best(getattr(_kernels_py, name), args, opts.repeat)
        if _kernels is None:
            print(f"{name:<24}{t_py * 1e3:>12.3f}{'n/a':>13}{'':>9}")
            continue
        t_c = best(getattr(_kernels, name), args, opts.repeat)
        print(f"{name:<24}{t_py * 1e3:>12.3f}{t_c * 1e3:>13.3f}{t_py / t_c:>8.1f}x")


if __name__ == "__main__":
    main()
