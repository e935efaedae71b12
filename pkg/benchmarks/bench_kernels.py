"""Time the numba kernels against their numpy fallbacks.

    python benchmarks/bench_kernels.py [--lmax 10000] [--repeat 3]

Both implementations are called directly, so one process covers both
backends regardless of HECKECONV_KERNELS.  The first numba call (JIT
compilation, or loading the on-disk cache) is reported separately.
"""

import argparse
import math
import time

import numpy as np

from heckeconv import _kernels as K


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases(lmax):
    pairs = [(m, n) for m in range(1, 6) for n in range(1, 6)]
    ms = np.array([-m for m, _ in pairs], dtype=np.int64)
    ns = np.array([-n for _, n in pairs], dtype=np.int64)
    xs = 4 * math.pi * math.sqrt(6) / np.arange(50, lmax + 1, dtype=np.float64)
    lognorm = math.lgamma(12.0)
    mu = K._mobius_np(lmax)
    return {
        "kloosterman table (25 pairs)": (lambda: K._kl_table_nb(ms, ns, lmax), lambda: K._kl_table_np(ms, ns, lmax)),
        "residue counts (ell=9973)": (lambda: K._kl_counts_nb(-3, -5, 9973), lambda: K._kl_counts_np(-3, -5, 9973)),
        "mobius sieve": (lambda: K._mobius_nb(lmax * 10), lambda: K._mobius_np(lmax * 10)),
        "totient sieve": (lambda: K._totient_nb(lmax * 10), lambda: K._totient_np(lmax * 10)),
        "ramanujan sums": (lambda: K._ramanujan_nb(360, lmax, mu), lambda: K._ramanujan_np(360, lmax, mu)),
        "bessel series": (lambda: K._bessel_series_nb(11.0, xs, lognorm),
                          lambda: K._bessel_series_np(11.0, xs, lognorm)),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--lmax", type=int, default=10_000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not K.USE_NUMBA:
        print("numba backend disabled or unavailable; timing numpy only")
    print(f"{'kernel':32s} {'first numba':>12s} {'numba':>10s} {'numpy':>10s} {'speedup':>8s}")
    for name, (nb, npy) in cases(args.lmax).items():
        t_np = best_of(npy, args.repeat)
        if K.USE_NUMBA:
            t0 = time.perf_counter()
            nb()
            first = time.perf_counter() - t0
            t_nb = best_of(nb, args.repeat)
            print(f"{name:32s} {first:12.4f} {t_nb:10.4f} {t_np:10.4f} {t_np / t_nb:8.1f}x")
        else:
            print(f"{name:32s} {'-':>12s} {'-':>10s} {t_np:10.4f} {'-':>8s}")


if __name__ == "__main__":
    main()
