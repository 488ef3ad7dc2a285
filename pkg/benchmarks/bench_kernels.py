"""Compare the numba kernel with the numpy fallback on the double sum.

    python benchmarks/bench_kernels.py
"""
import timeit

import numpy as np

from spacings2d import _accel


def main():
    rng = np.random.default_rng(0)
    print(f"{'kernel':>8} {'n':>5} {'numba us':>10} {'numpy us':>10} {'speedup':>8}  identical")
    for name, code in (("square", _accel.SQUARE), ("absdev", _accel.ABSDEV), ("neglog", _accel.NEGLOG)):
        for n in (16, 64, 256, 512):
            u, v = rng.standard_exponential((2, n))
            _accel.pair_sum_numba(u, v, code)
            reps = max(3, 20000 // n)
            t_jit = timeit.timeit(lambda: _accel.pair_sum_numba(u, v, code), number=reps) / reps
            t_np = timeit.timeit(lambda: _accel.pair_sum_numpy(u, v, code), number=max(3, reps // 10)) / max(3, reps // 10)
            same = _accel.pair_sum_numba(u, v, code) == _accel.pair_sum_numpy(u, v, code)
            print(f"{name:>8} {n:>5} {t_jit * 1e6:>10.1f} {t_np * 1e6:>10.1f} {t_np / t_jit:>8.1f}  {same}")


if __name__ == "__main__":
    main()
