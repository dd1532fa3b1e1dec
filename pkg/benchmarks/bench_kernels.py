"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--n 14] [--repeat 5]

Prints one line per kernel with the best-of-repeat time for each backend and
the speedup, then an end-to-end timing of a C² partition function with each
backend selected through ALEINST_PURE_PYTHON.
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import timeit

from aleinst import _kernels_py as py

try:
    from aleinst import _kernels as cy
except ImportError:
    cy = None

# one cold call per fresh interpreter, so no memoized results carry over
END_TO_END = """
import time
from fractions import Fraction as F
from aleinst.nekrasov import z_c2
start = time.perf_counter()
z_c2(e1=F(1, 5), e2=F(1, 7), a=(F(7, 3), F(-7, 3)), cutoff={order})
print(time.perf_counter() - start)
"""


def workloads(mod, n: int) -> dict:
    parts = py.partitions(n)
    pairs = [(p, q) for p in parts[::3] for q in parts[::5]]
    return {
        f"partitions({n})": lambda: mod.partitions(n),
        f"conjugate x{len(parts)}": lambda: [mod.conjugate(p) for p in parts],
        f"vertex_pairs x{len(pairs)}": lambda: [mod.vertex_pairs(p, q) for p, q in pairs],
        f"fund_pairs x{len(parts)}": lambda: [mod.fund_pairs(p) for p in parts],
    }


def best(fn, repeat: int) -> float:
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def end_to_end(order: int, pure: bool, repeat: int) -> float:
    env = dict(os.environ, ALEINST_PURE_PYTHON="1" if pure else "0")
    code = END_TO_END.format(order=order)
    runs = [
        float(subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                             text=True, check=True).stdout)
        for _ in range(repeat)
    ]
    return min(runs)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=14)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--order", type=int, default=4, help="q-order of the end-to-end run")
    args = ap.parse_args()
    if cy is None:
        print("compiled kernels not built; only the fallback is available")
    py_jobs = workloads(py, args.n)
    cy_jobs = workloads(cy, args.n) if cy else {}
    print(f"{'kernel':28s} {'python':>10s} {'cython':>10s} {'speedup':>8s}")
    for name, fn in py_jobs.items():
        t_py = best(fn, args.repeat)
        if cy:
            assert cy_jobs[name]() == fn(), f"{name}: backends disagree"
            t_cy = best(cy_jobs[name], args.repeat)
            print(f"{name:28s} {t_py * 1e3:9.2f}ms {t_cy * 1e3:9.2f}ms {t_py / t_cy:7.1f}x")
        else:
            print(f"{name:28s} {t_py * 1e3:9.2f}ms")
    t_pure = end_to_end(args.order, pure=True, repeat=args.repeat)
    line = f"{'z_c2 U(2) order ' + str(args.order):28s} {t_pure * 1e3:9.2f}ms"
    if cy:
        t_comp = end_to_end(args.order, pure=False, repeat=args.repeat)
        line += f" {t_comp * 1e3:9.2f}ms {t_pure / t_comp:7.1f}x"
    print(line)


if __name__ == "__main__":
    main()
