#!/usr/bin/env python3
"""Benchmark the compiled stepping kernels against the numpy fallback.

Two views:

* micro -- per-call time of each kernel entry point across grid sizes;
* end-to-end -- full scenario runs with the kernel dispatch table swapped
  to each backend in turn (reaction evaluation, trace bookkeeping and
  step control are shared Python/numpy code, so whole-run speedups are
  smaller than the per-kernel ones).

Usage: python benchmarks/bench_kernels.py [--quick]
"""

import argparse
import time

import numpy as np

from blowup_lab import kernels
from blowup_lab.config import load_config
from blowup_lab.kernels import available_backends
from blowup_lab.pde import advance

_KERNEL_NAMES = (
    "plap_apply",
    "rhs_into",
    "euler_step_into",
    "max_abs_face_grad",
    "grad_p_norm",
    "field_stats",
    "max_abs_diff",
    "diff_l2sq",
    "all_finite",
)


def best_of(fn, repeat=7, number=200):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for _ in range(number):
            fn()
        best = min(best, (time.perf_counter() - t0) / number)
    return best


def micro(backends, sizes):
    print(f"\nmicro-benchmarks (per call, n = grid cells), p = 3")
    header = f"{'kernel':18s} {'n':>6s}" + "".join(f" {name:>12s}" for name in backends)
    if len(backends) == 2:
        header += f" {'speedup':>9s}"
    print(header)
    for n in sizes:
        rng = np.random.default_rng(0)
        u = rng.standard_normal(n)
        fu = np.abs(u) ** 1.5
        out = np.empty_like(u)
        dx = 1.0 / n
        cases = {
            "plap_apply": lambda impl: impl.plap_apply(u, dx, 3.0, out),
            "rhs_into": lambda impl: impl.rhs_into(u, fu, dx, 3.0, out),
            "euler_step_into": lambda impl: impl.euler_step_into(u, fu, dx, 3.0, 1e-6, out),
            "field_stats": lambda impl: impl.field_stats(u, dx),
            "grad_p_norm": lambda impl: impl.grad_p_norm(u, dx, 3.0),
        }
        for name, call in cases.items():
            times = {b: best_of(lambda: call(impl)) for b, impl in backends.items()}
            row = f"{name:18s} {n:6d}"
            for b in backends:
                row += f" {times[b] * 1e6:10.2f}us"
            if len(backends) == 2:
                row += f" {times['python'] / times['cython']:8.1f}x"
            print(row)


def swap_backend(impl):
    saved = {name: getattr(kernels, name) for name in _KERNEL_NAMES}
    for name in _KERNEL_NAMES:
        setattr(kernels, name, getattr(impl, name))
    return saved


def end_to_end(backends, quick):
    runs = [("heat", 0.02 if quick else 0.1), ("blowup_p2_usq", None)]
    print("\nend-to-end scenario runs")
    for name, t_end in runs:
        print(f"  scenario {name}" + (f" (t_end={t_end})" if t_end else ""))
        for bname, impl in backends.items():
            saved = swap_backend(impl)
            try:
                cfg = load_config(name)
                problem = cfg.to_problem()
                if t_end is not None:
                    problem.t_end = t_end
                trace = []
                t0 = time.perf_counter()
                outcome = advance(problem, [trace.append])
                wall = time.perf_counter() - t0
            finally:
                for k, v in saved.items():
                    setattr(kernels, k, v)
            print(
                f"    {bname:8s} {wall:7.2f}s  {outcome.status:9s} "
                f"steps={len(trace) - 1} ({len(trace) / max(wall, 1e-9):,.0f} rec/s)"
            )


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--quick", action="store_true", help="shorter end-to-end runs")
    args = ap.parse_args()

    backends = available_backends()
    print(f"available backends: {', '.join(backends)} (active: {kernels.BACKEND})")
    if len(backends) < 2:
        print("compiled extension not built; micro table covers the fallback only")
    micro(backends, (100, 400, 1600) if args.quick else (100, 400, 1600, 6400))
    end_to_end(backends, args.quick)


if __name__ == "__main__":
    main()
