"""Time every kernel under the numpy and numba backends.

    python benchmarks/bench_kernels.py [--repeat 5]

Numba functions are called once before timing so compilation is excluded.
"""
import argparse
import timeit

import numpy as np

from dhindex import _kernels


def cases(rng):
    n = 240
    table = (np.arange(n) ** 2) % n
    bi = rng.integers(0, 36, size=(36, 36))
    eq = rng.random((40, 40)) < 0.9
    vec = rng.integers(0, 7681, size=768)
    return {
        "cyclotomic_ok": (table, 120, 2, n),
        "bi_cyclotomic_ok": (bi, 36, 36, 0, 0, 36),
        "cyclotomic_oracle": (table[:96] % 96, 48, 96),
        "rectangle_scan": (eq,),
        "quad_best_agreement": (200, 8),
        "bi_scan_count": (300, 3, 5, 7),
        "dft_mod": (vec, 17, 7681),
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if _kernels.NUMBA is None:
        raise SystemExit("numba is not installed")
    rng = np.random.default_rng(0)
    print(f"{'kernel':<22}{'numpy [ms]':>12}{'numba [ms]':>12}{'speedup':>10}")
    for name, call_args in cases(rng).items():
        timings = {}
        for backend in (_kernels.NUMPY, _kernels.NUMBA):
            fn = getattr(backend, name)
            ref = fn(*call_args)
            best = min(timeit.repeat(lambda: fn(*call_args), number=1, repeat=args.repeat))
            timings[backend.name] = (best, ref)
        (t_np, r_np), (t_nb, r_nb) = timings["numpy"], timings["numba"]
        assert np.array_equal(r_np, r_nb), name
        print(f"{name:<22}{t_np * 1e3:>12.3f}{t_nb * 1e3:>12.3f}{t_np / t_nb:>9.1f}x")


if __name__ == "__main__":
    main()
