"""Time the compiled and numpy kernel backends on representative workloads.

    python benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from chiralret.core import MCP3
from chiralret.kernels import available_backends

DIP = (MCP3.d_e, MCP3.d_m, MCP3.d_e, MCP3.d_m)


def workloads():
    u = np.logspace(-4, 3, 200_000)
    re_n = np.linspace(0.05, 5.0, 500)
    im_n = np.linspace(0.0, 4.0, 400)
    u_trace = np.logspace(-4, 3, 20_000)
    return {
        "closed_terms (2e5 separations)":
            lambda k: k.closed_terms(u, 1.4 + 0.07j, 1.2 + 0.01j, 1.0 + 0j, *DIP, 1.0, 4.0),
        "limit_grid (400 x 500 indices)":
            lambda k: k.limit_grid(re_n, im_n, True, *DIP, False),
        "trace_terms (2e4 separations)":
            lambda k: k.trace_terms(u_trace, 0.52 + 2.39j, 1.0 + 0j, 1.6 + 0.06j, 1.0 + 0j,
                                    1 / 3, 2 / 3, 2 / 3),
    }


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args()
    backends = available_backends()
    names = sorted(backends)
    print(f"{'workload':34}" + "".join(f"{n:>12}" for n in names) + "     speedup")
    for label, fn in workloads().items():
        best = {}
        for name in names:
            k = backends[name]
            fn(k)  # warm-up
            best[name] = min(timeit.repeat(lambda: fn(k), number=1, repeat=args.repeat))
        speed = f"{best['python'] / best['cython']:10.1f}x" if "cython" in best else "         -"
        print(f"{label:34}" + "".join(f"{best[n] * 1e3:10.2f}ms" for n in names) + speed)


if __name__ == "__main__":
    main()
