"""Compare the numba kernels against the pure-numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 5] [--degrees 16 64 256 1024]

Each kernel is checked for agreement between the two implementations before
it is timed; numba compilation is excluded by a warm-up call. The last table
times an end-to-end workload (sup norms and a growth sequence) in two
subprocesses, one with DNCHAOS_DISABLE_NUMBA=1.
"""

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from dnchaos import _kernels

END_TO_END = """
import time
import numpy as np
from dnchaos import Interval, from_coeffs, sup_norm, constant, growth_sequence
rng = np.random.default_rng(0)
iv = Interval(-2.0, 3.0)
fs = [from_coeffs(iv, rng.uniform(-1, 1, 64)) for _ in range(200)]
sup_norm(fs[0]); growth_sequence("B", constant(iv, 1.0), 5)  # warm-up / JIT
t = time.perf_counter()
for f in fs:
    sup_norm(f)
growth_sequence("B", constant(iv, 1.0), 60)
print(time.perf_counter() - t)
"""


def workloads(deg, rng):
    c = rng.uniform(-1, 1, deg + 1)
    s = np.cos(np.pi * np.arange(8 * (deg + 1)) / (8 * deg + 7))
    lo = np.linspace(-1, 1, 65)[:-1]
    hi = lo + 2 / 64
    return {
        "clenshaw": lambda impl: impl.clenshaw(c, s),
        "derivative": lambda impl: impl.cheb_derivative(c),
        "integral": lambda impl: impl.cheb_integral(c),
        "golden_max": lambda impl: impl.golden_max_abs(c, lo, hi, 1e-13)[1],
    }


def best_time(fn, repeat):
    number = 1
    while timeit.timeit(fn, number=number) < 0.05:
        number *= 2
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def end_to_end():
    out = {}
    for label, disable in (("numpy", "1"), ("numba", "0")):
        env = dict(os.environ, DNCHAOS_DISABLE_NUMBA=disable)
        proc = subprocess.run([sys.executable, "-c", END_TO_END], env=env, capture_output=True, text=True, check=True)
        out[label] = float(proc.stdout.strip())
    return out


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--degrees", type=int, nargs="+", default=[16, 64, 256, 1024])
    parser.add_argument("--skip-end-to-end", action="store_true")
    args = parser.parse_args(argv)

    if _kernels.numba_impl is None:
        print("numba is not installed; nothing to compare")
        return 1
    rng = np.random.default_rng(1)
    print(f"{'kernel':<12}{'degree':>8}{'numpy [us]':>14}{'numba [us]':>14}{'speedup':>10}")
    for deg in args.degrees:
        for name, run in workloads(deg, rng).items():
            ref, fast = run(_kernels.numpy_impl), run(_kernels.numba_impl)
            if not np.allclose(ref, fast, rtol=1e-12, atol=1e-12 * np.abs(ref).max()):
                raise SystemExit(f"{name} at degree {deg}: implementations disagree")
            t_np = best_time(lambda: run(_kernels.numpy_impl), args.repeat)
            t_nb = best_time(lambda: run(_kernels.numba_impl), args.repeat)
            print(f"{name:<12}{deg:>8}{1e6 * t_np:>14.2f}{1e6 * t_nb:>14.2f}{t_np / t_nb:>10.2f}")
    if not args.skip_end_to_end:
        t = end_to_end()
        print(f"\nend-to-end (200 sup norms + 60-step growth): numpy {t['numpy']:.3f} s, "
              f"numba {t['numba']:.3f} s, speedup {t['numpy'] / t['numba']:.2f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
