"""Compare the compiled and numpy exponential-sum kernels.

    python benchmarks/bench_kernels.py [--repeat N]

Times the raw kernel on a packet-sized problem and one full packet-field
evaluation per backend, and reports the largest relative difference.
"""
import argparse
import time

import numpy as np

from quatstep import kernels
from quatstep.packet import ConvolutionSpec, packet_field
from quatstep.quadrature import QuadratureSpec
from quatstep.step import PotentialStep


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--points", type=int, default=2001)
    ap.add_argument("--nodes", type=int, default=1024)
    args = ap.parse_args()

    rng = np.random.default_rng(1)
    x = np.linspace(-3000.0, 0.0, args.points)
    k = rng.uniform(1.8, 2.2, args.nodes) + 0j
    a = rng.normal(size=args.nodes) + 1j * rng.normal(size=args.nodes)

    V = PotentialStep(0.0, 1.0, 0.0)
    conv = ConvolutionSpec.from_energy(2.0, 0.01)
    quad = QuadratureSpec(nodes=args.nodes)
    grid = np.linspace(-3100.0, -2900.0, args.points)

    results = {}
    print(f"{'backend':8s} {'expsum [ms]':>12s} {'field [ms]':>12s}")
    for name in kernels.available_backends():
        fn = kernels.get_expsum(name)
        t_kernel = best_of(lambda: fn(x, k, a), args.repeat)
        t_field = best_of(lambda: packet_field("free", conv, quad, V, grid, 1500.0, name),
                          args.repeat)
        results[name] = fn(x, k, a)
        print(f"{name:8s} {1e3 * t_kernel:12.2f} {1e3 * t_field:12.2f}")

    if len(results) == 2:
        c, n = results["cython"], results["numpy"]
        print(f"max relative difference: {np.max(np.abs(c - n)) / np.max(np.abs(n)):.2e}")
    else:
        print("compiled backend not built; only numpy timed")


if __name__ == "__main__":
    main()
