"""Time the numba kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 5]

Compilation happens once up front and is excluded from the timings.
"""

import argparse
import timeit

import numpy as np

from hlplane import _kernels
from hlplane.planepart import enumerate_by_volume


def random_plane_partition(rng, rows, cols, top):
    """Random heights sorted to decrease along rows, then along columns."""
    h = rng.integers(0, top + 1, size=(rows, cols))
    h = np.sort(h, axis=1)[:, ::-1]
    h = np.sort(h, axis=0)[::-1, :]
    return np.ascontiguousarray(h)


def bench(label, fn, repeat):
    best = min(timeit.repeat(fn, number=1, repeat=repeat))
    print(f"  {label:<8} {best * 1e3:9.3f} ms")
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if not _kernels.USE_NUMBA:
        print("numba disabled (HLPLANE_DISABLE_NUMBA); nothing to compare")
        return 0
    rng = np.random.default_rng(args.seed)

    a = rng.integers(-3, 4, size=(40, 30))
    b = rng.integers(-3, 4, size=(40, 30))
    _kernels.conv_trunc(a[:2], b[:2], 2, use_numba=True)
    print("truncated convolution, 40x30 grids")
    t_np = bench("numpy", lambda: _kernels.conv_trunc(a, b, 40, use_numba=False), args.repeat)
    t_nb = bench("numba", lambda: _kernels.conv_trunc(a, b, 40, use_numba=True), args.repeat)
    print(f"  speedup  {t_np / t_nb:9.1f}x")

    small = [p.heights() for p in enumerate_by_volume(10)]
    big = random_plane_partition(rng, 120, 120, 6)
    _kernels.levels_and_paths(small[0], use_numba=True)
    for label, grids in ((f"levels and paths, {len(small)} partitions of 10", small),
                         ("levels and paths, one 120x120 array", [big])):
        print(label)
        run = lambda flag: [_kernels.levels_and_paths(h, use_numba=flag) for h in grids]
        t_np = bench("numpy", lambda: run(False), args.repeat)
        t_nb = bench("numba", lambda: run(True), args.repeat)
        print(f"  speedup  {t_np / t_nb:9.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
